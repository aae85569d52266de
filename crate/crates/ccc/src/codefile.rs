//! On-disk code format.
//!
//! A code file is a short header of `# key=value` lines followed by one
//! codeword per line, written as digits (so the alphabet is capped at
//! q = 10). The header names q, n, and the composition, and optionally the
//! field, the truncation order, and the guaranteed distance:
//!
//! ```text
//! # q=3
//! # n=8
//! # composition=3,3,2
//! # field=2^3
//! # d0=2
//! # guaranteed_d=3
//! 00011122
//! ...
//! ```
//!
//! Writing is canonical, so identical codes produce byte-identical files.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::composition::{Composition, Word};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CodeFileError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("file must end with a newline")]
    MissingFinalNewline,
}

fn malformed(line: usize, reason: impl Into<String>) -> CodeFileError {
    CodeFileError::Malformed {
        line,
        reason: reason.into(),
    }
}

/// An in-memory code file: header fields plus the word list.
#[derive(Debug, Clone)]
pub struct CodeFile {
    pub q: usize,
    pub n: usize,
    pub comp: Composition,
    /// (p, k), when the header records the field.
    pub field: Option<(u64, u32)>,
    pub d0: Option<u32>,
    /// Outer None: header line absent. Inner None: recorded as `none`.
    pub guaranteed_d: Option<Option<usize>>,
    pub words: Vec<Word>,
}

impl CodeFile {
    /// Render in the canonical format.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let weights: Vec<String> = self.comp.weights().iter().map(|w| w.to_string()).collect();
        writeln!(out, "# q={}", self.q).unwrap();
        writeln!(out, "# n={}", self.n).unwrap();
        writeln!(out, "# composition={}", weights.join(",")).unwrap();
        if let Some((p, k)) = self.field {
            writeln!(out, "# field={p}^{k}").unwrap();
        }
        if let Some(d0) = self.d0 {
            writeln!(out, "# d0={d0}").unwrap();
        }
        if let Some(g) = self.guaranteed_d {
            match g {
                Some(d) => writeln!(out, "# guaranteed_d={d}").unwrap(),
                None => writeln!(out, "# guaranteed_d=none").unwrap(),
            }
        }
        for w in &self.words {
            for &s in w.symbols() {
                out.push((b'0' + s) as char);
            }
            out.push('\n');
        }
        out
    }

    pub fn write_to(&self, path: &Path) -> Result<(), CodeFileError> {
        std::fs::write(path, self.render())?;
        Ok(())
    }

    pub fn read_from(path: &Path) -> Result<Self, CodeFileError> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CodeFileError> {
        if !text.ends_with('\n') {
            return Err(CodeFileError::MissingFinalNewline);
        }
        let mut lines = text.lines().enumerate().peekable();

        let mut take_header = |key: &str| -> Result<Option<(usize, String)>, CodeFileError> {
            let prefix = format!("# {key}=");
            match lines.peek() {
                Some((i, line)) if line.starts_with(&prefix) => {
                    let value = line[prefix.len()..].to_string();
                    let i = *i;
                    lines.next();
                    Ok(Some((i + 1, value)))
                }
                _ => Ok(None),
            }
        };

        let (ln, q_text) =
            take_header("q")?.ok_or_else(|| malformed(1, "expected `# q=<int>`"))?;
        let q: usize = q_text
            .parse()
            .map_err(|_| malformed(ln, "q is not an integer"))?;
        if !(2..=10).contains(&q) {
            return Err(malformed(ln, format!("q = {q} is outside the supported 2..=10")));
        }

        let (ln, n_text) =
            take_header("n")?.ok_or_else(|| malformed(2, "expected `# n=<int>`"))?;
        let n: usize = n_text
            .parse()
            .map_err(|_| malformed(ln, "n is not an integer"))?;

        let (ln, comp_text) = take_header("composition")?
            .ok_or_else(|| malformed(3, "expected `# composition=<comma-separated>`"))?;
        let weights: Vec<usize> = comp_text
            .split(',')
            .map(|t| t.parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| malformed(ln, "composition entries must be integers"))?;
        if weights.len() != q {
            return Err(malformed(ln, format!("composition must list exactly q = {q} weights")));
        }
        if weights.iter().sum::<usize>() != n {
            return Err(malformed(ln, format!("composition must sum to n = {n}")));
        }
        let comp = Composition::new(weights)
            .map_err(|e| malformed(ln, e.to_string()))?;

        let field = match take_header("field")? {
            Some((ln, text)) => Some(
                parse_field_spec(&text).ok_or_else(|| malformed(ln, "field must look like p^k"))?,
            ),
            None => None,
        };
        let d0 = match take_header("d0")? {
            Some((ln, text)) => Some(
                text.parse::<u32>()
                    .map_err(|_| malformed(ln, "d0 is not an integer"))?,
            ),
            None => None,
        };
        let guaranteed_d = match take_header("guaranteed_d")? {
            Some((_, text)) if text == "none" => Some(None),
            Some((ln, text)) => Some(Some(
                text.parse::<usize>()
                    .map_err(|_| malformed(ln, "guaranteed_d must be an integer or `none`"))?,
            )),
            None => None,
        };

        let mut words = Vec::new();
        let mut seen: HashSet<&str> = HashSet::new();
        for (i, line) in lines {
            let ln = i + 1;
            if line.is_empty() {
                return Err(malformed(ln, "blank line in body"));
            }
            if line.starts_with('#') {
                return Err(malformed(ln, "unexpected header line in body"));
            }
            if line.len() != n {
                return Err(malformed(ln, format!("codeword must have exactly n = {n} symbols")));
            }
            let mut symbols = Vec::with_capacity(n);
            for ch in line.chars() {
                match ch.to_digit(10) {
                    Some(d) if (d as usize) < q => symbols.push(d as u8),
                    _ => return Err(malformed(ln, format!("symbol `{ch}` is outside the alphabet 0..{q}"))),
                }
            }
            if !seen.insert(line) {
                return Err(malformed(ln, "duplicate codeword"));
            }
            let word = Word(symbols);
            if !comp.contains(&word) {
                return Err(malformed(ln, "codeword does not match the composition"));
            }
            words.push(word);
        }

        Ok(CodeFile {
            q,
            n,
            comp,
            field,
            d0,
            guaranteed_d,
            words,
        })
    }
}

/// Parse "p^k" or a bare prime "p" (meaning k = 1).
pub fn parse_field_spec(text: &str) -> Option<(u64, u32)> {
    match text.split_once('^') {
        Some((p, k)) => Some((p.parse().ok()?, k.parse().ok()?)),
        None => Some((text.parse().ok()?, 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> CodeFile {
        CodeFile {
            q: 3,
            n: 3,
            comp: Composition::new(vec![1, 1, 1]).unwrap(),
            field: Some((3, 1)),
            d0: Some(1),
            guaranteed_d: Some(Some(2)),
            words: vec![Word(vec![0, 1, 2]), Word(vec![1, 2, 0])],
        }
    }

    #[test]
    fn renders_canonically() {
        let text = sample().render();
        assert_eq!(
            text,
            "# q=3\n# n=3\n# composition=1,1,1\n# field=3^1\n# d0=1\n# guaranteed_d=2\n012\n120\n"
        );
    }

    #[test]
    fn round_trips() {
        let file = sample();
        let parsed = CodeFile::parse(&file.render()).unwrap();
        assert_eq!(parsed.words, file.words);
        assert_eq!(parsed.q, file.q);
        assert_eq!(parsed.field, file.field);
        assert_eq!(parsed.guaranteed_d, file.guaranteed_d);
        assert_eq!(parsed.render(), file.render());
    }

    #[test]
    fn guaranteed_none_round_trips() {
        let mut file = sample();
        file.guaranteed_d = Some(None);
        let parsed = CodeFile::parse(&file.render()).unwrap();
        assert_eq!(parsed.guaranteed_d, Some(None));
    }

    #[test]
    fn optional_headers_may_be_absent() {
        let text = "# q=2\n# n=2\n# composition=1,1\n01\n10\n";
        let parsed = CodeFile::parse(text).unwrap();
        assert_eq!(parsed.field, None);
        assert_eq!(parsed.d0, None);
        assert_eq!(parsed.guaranteed_d, None);
        assert_eq!(parsed.words.len(), 2);
    }

    #[test]
    fn rejects_malformed_input() {
        // missing final newline
        assert!(matches!(
            CodeFile::parse("# q=2\n# n=2\n# composition=1,1\n01"),
            Err(CodeFileError::MissingFinalNewline)
        ));
        // duplicate codeword
        let dup = "# q=2\n# n=2\n# composition=1,1\n01\n01\n";
        assert!(CodeFile::parse(dup).is_err());
        // blank line
        let blank = "# q=2\n# n=2\n# composition=1,1\n01\n\n10\n";
        assert!(CodeFile::parse(blank).is_err());
        // wrong length
        let short = "# q=2\n# n=2\n# composition=1,1\n0\n";
        assert!(CodeFile::parse(short).is_err());
        // symbol outside alphabet
        let bad_sym = "# q=2\n# n=2\n# composition=1,1\n02\n";
        assert!(CodeFile::parse(bad_sym).is_err());
        // composition mismatch
        let bad_comp = "# q=2\n# n=2\n# composition=1,1\n00\n";
        assert!(CodeFile::parse(bad_comp).is_err());
        // composition does not sum to n
        let bad_sum = "# q=2\n# n=3\n# composition=1,1\n01\n";
        assert!(CodeFile::parse(bad_sum).is_err());
        // q too large for the digit format
        let big_q = "# q=11\n# n=2\n# composition=1,1,0,0,0,0,0,0,0,0,0\n01\n";
        assert!(CodeFile::parse(big_q).is_err());
        // headers out of order
        let disorder = "# n=2\n# q=2\n# composition=1,1\n01\n";
        assert!(CodeFile::parse(disorder).is_err());
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!(parse_field_spec("3^2"), Some((3, 2)));
        assert_eq!(parse_field_spec("7"), Some((7, 1)));
        assert_eq!(parse_field_spec("a^b"), None);
    }
}
