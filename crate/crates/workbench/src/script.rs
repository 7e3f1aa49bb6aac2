//! Line-oriented command scripts.
//!
//! ```text
//! # comments and blank lines are ignored
//! init 4
//! union 0 1
//! explain 1 0
//! ```
//!
//! `init N` must come first and appears once. Every certificate the engine
//! produces is checked against the union log before it is written out.

use std::io::{self, Write};

use uf_explain::{check, CheckError, Elem, Engine, UfError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Init(usize),
    Union(Elem, Elem),
    Explain(Elem, Elem),
}

#[derive(Debug, thiserror::Error)]
pub enum ScriptError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: command before init")]
    NoInit { line: usize },
    #[error("line {line}: init given twice")]
    DuplicateInit { line: usize },
    #[error("line {line}: {source}")]
    Engine { line: usize, source: UfError },
    #[error("line {line}: certificate rejected: {source}")]
    Rejected { line: usize, source: CheckError },
    #[error("line {line}: certificate proves ({got_x}, {got_y}), expected ({x}, {y})")]
    WrongConclusion { line: usize, x: Elem, y: Elem, got_x: Elem, got_y: Elem },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl ScriptError {
    /// True for failures of certificate validation, as opposed to bad input.
    pub fn is_validation_failure(&self) -> bool {
        matches!(self, ScriptError::Rejected { .. } | ScriptError::WrongConclusion { .. })
    }
}

/// Parses a script into `(line number, command)` pairs. Line numbers start
/// at 1.
pub fn parse_script(text: &str) -> Result<Vec<(usize, Command)>, ScriptError> {
    let mut commands = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| ScriptError::Parse { line, message };
        let mut words = content.split_whitespace();
        let name = words.next().expect("non-empty line");
        let args = words
            .map(|w| w.parse::<usize>().map_err(|_| err(format!("bad number {w:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let command = match (name, args.as_slice()) {
            ("init", &[n]) => Command::Init(n),
            ("union", &[a, b]) => Command::Union(a, b),
            ("explain", &[x, y]) => Command::Explain(x, y),
            ("init" | "union" | "explain", _) => {
                return Err(err(format!("wrong number of arguments to {name}")))
            }
            _ => return Err(err(format!("unknown command {name:?}"))),
        };
        commands.push((line, command));
    }
    Ok(commands)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Report {
    pub commands: usize,
    pub effective_unions: usize,
    pub redundant_unions: usize,
    /// Explains that produced a certificate, all of which passed the checker.
    pub validated: usize,
    /// Explains of elements that are not equivalent.
    pub unprovable: usize,
}

/// Runs `commands` against one engine, writing a line per explain to `out`:
/// `X Y PROOF`, or `X Y none` when the elements are not equivalent.
///
/// Stops at the first error. Out-of-range elements and rejected
/// certificates are both errors.
pub fn run_script<W: Write>(commands: &[(usize, Command)], mut out: W) -> Result<Report, ScriptError> {
    let mut engine: Option<Engine> = None;
    let mut report = Report::default();
    for &(line, command) in commands {
        report.commands += 1;
        let engine_err = |source| ScriptError::Engine { line, source };
        match command {
            Command::Init(n) => {
                if engine.is_some() {
                    return Err(ScriptError::DuplicateInit { line });
                }
                engine = Some(Engine::new(n).map_err(engine_err)?);
            }
            Command::Union(a, b) => {
                let engine = engine.as_mut().ok_or(ScriptError::NoInit { line })?;
                if engine.add_union(a, b).map_err(engine_err)? {
                    report.effective_unions += 1;
                } else {
                    report.redundant_unions += 1;
                }
            }
            Command::Explain(x, y) => {
                let engine = engine.as_ref().ok_or(ScriptError::NoInit { line })?;
                let len = engine.elements();
                for elem in [x, y] {
                    if elem >= len {
                        return Err(engine_err(UfError::OutOfRange { elem, len }));
                    }
                }
                match engine.explain(x, y) {
                    Some(proof) => {
                        let (got_x, got_y) =
                            check(engine.log(), &proof).map_err(|source| ScriptError::Rejected { line, source })?;
                        if (got_x, got_y) != (x, y) {
                            return Err(ScriptError::WrongConclusion { line, x, y, got_x, got_y });
                        }
                        report.validated += 1;
                        writeln!(out, "{x} {y} {proof}")?;
                    }
                    None => {
                        report.unprovable += 1;
                        writeln!(out, "{x} {y} none")?;
                    }
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Result<(Report, String), ScriptError> {
        let mut out = Vec::new();
        let report = run_script(&parse_script(text)?, &mut out)?;
        Ok((report, String::from_utf8(out).unwrap()))
    }

    #[test]
    fn parses_with_comments() {
        let cmds = parse_script("# header\n\ninit 3  # trailing\nunion 0 1\nexplain 1 0\n").unwrap();
        assert_eq!(
            cmds,
            vec![(3, Command::Init(3)), (4, Command::Union(0, 1)), (5, Command::Explain(1, 0))]
        );
    }

    #[test]
    fn parse_errors_name_the_line() {
        let e = parse_script("init 2\nunion 0\n").unwrap_err();
        assert!(matches!(e, ScriptError::Parse { line: 2, .. }));
        let e = parse_script("init 2\nfrob 0 1\n").unwrap_err();
        assert_eq!(e.to_string(), "line 2: unknown command \"frob\"");
        assert!(matches!(parse_script("init -1").unwrap_err(), ScriptError::Parse { line: 1, .. }));
    }

    #[test]
    fn validated_proof() {
        let (report, out) = run("init 2\nunion 0 1\nexplain 0 1\n").unwrap();
        assert_eq!(report.validated, 1);
        assert_eq!(report.effective_unions, 1);
        assert_eq!(report.commands, 3);
        assert!(out.starts_with("0 1 (trans"));
    }

    #[test]
    fn unrelated_elements_give_none() {
        let (report, out) = run("init 2\nexplain 0 1\n").unwrap();
        assert_eq!(report.unprovable, 1);
        assert_eq!(out, "0 1 none\n");
    }

    #[test]
    fn redundant_union_is_counted() {
        let (report, _) = run("init 3\nunion 0 1\nunion 1 0\n").unwrap();
        assert_eq!((report.effective_unions, report.redundant_unions), (1, 1));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            run("init 2\nunion 0 5\n").unwrap_err(),
            ScriptError::Engine { line: 2, source: UfError::OutOfRange { elem: 5, len: 2 } }
        ));
        assert!(matches!(
            run("init 2\nexplain 3 3\n").unwrap_err(),
            ScriptError::Engine { line: 2, .. }
        ));
        assert!(matches!(run("union 0 1\n").unwrap_err(), ScriptError::NoInit { line: 1 }));
        assert!(matches!(run("init 1\ninit 1\n").unwrap_err(), ScriptError::DuplicateInit { line: 2 }));
    }
}
