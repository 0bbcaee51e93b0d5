//! Canonical pretty-printer. `parse(format(ast))` is structurally equal to
//! `ast` for every well-formed tree.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::ast::{ArgValue, BaseCommand, CommandChain, ScriptAst, Statement};

/// One statement per line, no trailing newline.
pub fn format(ast: &ScriptAst) -> String {
    let lines: Vec<String> = ast.statements.iter().map(format_statement).collect();
    lines.join("\n")
}

pub fn format_statement(stmt: &Statement) -> String {
    match stmt {
        Statement::Bare(chain) => format_chain(chain),
        Statement::Task1d { index, chain, .. } => format!("task[{index}] = {}", format_chain(chain)),
        Statement::Task2d { row, col, chain, .. } => {
            format!("tasks[{row}][{col}] = {}", format_chain(chain))
        }
    }
}

pub fn format_chain(chain: &CommandChain) -> String {
    let mut out = format_command(&chain.base);
    if let Some(overlay) = &chain.overlay {
        out.push('.');
        out.push_str(&format_command(overlay));
    }
    if let Some(character) = &chain.character {
        let _ = write!(out, ".characterName({})", character.name);
    }
    out
}

pub fn format_command(cmd: &BaseCommand) -> String {
    let args: Vec<String> = cmd.args.iter().map(|a| format_arg(&a.value)).collect();
    format!("{}({})", cmd.verb.keyword(), args.join(", "))
}

fn format_arg(value: &ArgValue) -> String {
    match value {
        ArgValue::Words(words) => words.join(" "),
        // Display for f64 is the shortest round-tripping decimal and never
        // uses exponent notation.
        ArgValue::Number(n) => format!("{n}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{Arg, Verb};
    use crate::diag::SourceSpan;
    use crate::parse_source;

    fn do_jump() -> CommandChain {
        CommandChain {
            base: BaseCommand {
                verb: Verb::Do,
                args: alloc::vec![Arg {
                    value: ArgValue::Words(alloc::vec![String::from("jump")]),
                    span: SourceSpan::SYNTHETIC,
                }],
                span: SourceSpan::SYNTHETIC,
            },
            overlay: None,
            character: None,
            span: SourceSpan::SYNTHETIC,
        }
    }

    #[test]
    fn bare_do() {
        let ast = ScriptAst {
            statements: alloc::vec![Statement::Bare(do_jump())],
            ..Default::default()
        };
        assert_eq!(format(&ast), "do(jump)");
    }

    #[test]
    fn task_one_dimensional() {
        let ast = ScriptAst {
            statements: alloc::vec![Statement::Task1d {
                index: 4,
                chain: do_jump(),
                lhs_span: SourceSpan::SYNTHETIC,
            }],
            mode: crate::ast::Mode::Task1d,
        };
        assert_eq!(format(&ast), "task[4] = do(jump)");
    }

    #[test]
    fn canonicalizes_spacing_case_and_modifier_order() {
        let ast = parse_source("GOTO( target ,run ) . characterName( Rudy ).DO(wave   hand,handL, 2.50)").unwrap();
        assert_eq!(
            format(&ast),
            "goTo(target, run).do(wave hand, handL, 2.5).characterName(Rudy)"
        );
    }

    #[test]
    fn numbers_round_trip_without_exponents() {
        for n in [0.0, 3.0, 0.1, 1e-7, 123456789.125, 1e21] {
            let s = format_arg(&ArgValue::Number(n));
            assert!(!s.contains('e'), "{s}");
            assert_eq!(s.parse::<f64>().unwrap(), n);
        }
    }
}
