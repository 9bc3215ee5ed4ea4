//! Tokenized lines with positions; comments and blank lines are dropped.

use super::FormatError;

/// Largest dimension a document may declare.
pub(super) const DIM_CAP: usize = 1 << 20;

#[derive(Clone, Copy, Debug)]
pub(super) struct Token<'a> {
    pub text: &'a str,
    pub col: usize,
}

#[derive(Clone, Debug)]
pub(super) struct Line<'a> {
    pub no: usize,
    pub tokens: Vec<Token<'a>>,
    /// Column just past the last character.
    pub end: usize,
}

impl<'a> Line<'a> {
    fn error_at(&self, idx: usize, expected: impl Into<String>) -> FormatError {
        match self.tokens.get(idx) {
            Some(t) => FormatError {
                line: self.no,
                column: t.col,
                expected: expected.into(),
                found: format!("`{}`", t.text),
            },
            None => FormatError {
                line: self.no,
                column: self.end,
                expected: expected.into(),
                found: "end of line".into(),
            },
        }
    }

    pub fn error(&self, idx: usize, expected: impl Into<String>) -> FormatError {
        self.error_at(idx, expected)
    }

    pub fn int(&self, idx: usize) -> Result<i64, FormatError> {
        let tok = self.tokens.get(idx).ok_or_else(|| self.error_at(idx, "an integer"))?;
        parse_int(tok.text).ok_or_else(|| self.error_at(idx, "a 64-bit decimal integer"))
    }

    /// Integers from token `from` to the end, exactly `len` of them if given.
    pub fn ints(&self, from: usize, len: Option<usize>) -> Result<Vec<i64>, FormatError> {
        let have = self.tokens.len().saturating_sub(from);
        if let Some(len) = len {
            if have < len {
                return Err(self.error_at(from + have, format!("{len} integers")));
            }
            if have > len {
                return Err(self.error_at(from + len, "end of line"));
            }
        }
        (from..self.tokens.len()).map(|i| self.int(i)).collect()
    }

    pub fn finish(&self, used: usize) -> Result<(), FormatError> {
        if self.tokens.len() > used {
            Err(self.error_at(used, "end of line"))
        } else {
            Ok(())
        }
    }
}

fn parse_int(s: &str) -> Option<i64> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

pub(super) struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(text: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut last_line = 1;
        for (i, raw) in text.lines().enumerate() {
            last_line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            let mut col = 0;
            for (ci, (bi, ch)) in content.char_indices().enumerate() {
                col = ci + 1;
                if ch.is_whitespace() {
                    if let Some((sb, sc)) = start.take() {
                        tokens.push(Token {
                            text: &content[sb..bi],
                            col: sc,
                        });
                    }
                } else if start.is_none() {
                    start = Some((bi, col));
                }
            }
            if let Some((sb, sc)) = start {
                tokens.push(Token {
                    text: &content[sb..],
                    col: sc,
                });
            }
            if !tokens.is_empty() {
                lines.push(Line {
                    no: i + 1,
                    tokens,
                    end: col + 1,
                });
            }
        }
        Self {
            lines,
            pos: 0,
            last_line,
        }
    }

    fn eof(&self, expected: impl Into<String>) -> FormatError {
        FormatError {
            line: self.last_line,
            column: 1,
            expected: expected.into(),
            found: "end of input".into(),
        }
    }

    pub fn peek(&self) -> Option<&Line<'a>> {
        self.lines.get(self.pos)
    }

    pub fn peek_keyword(&self) -> Option<&'a str> {
        self.peek().map(|l| l.tokens[0].text)
    }

    /// Takes the next line, whatever it holds.
    pub fn next_line(&mut self, expected: &str) -> Result<Line<'a>, FormatError> {
        let line = self.lines.get(self.pos).cloned().ok_or_else(|| self.eof(expected))?;
        self.pos += 1;
        Ok(line)
    }

    /// Takes the next line, which must start with `kw`.
    pub fn keyword(&mut self, kw: &str) -> Result<Line<'a>, FormatError> {
        let expected = format!("`{kw}`");
        let line = self.lines.get(self.pos).ok_or_else(|| self.eof(&expected))?;
        if line.tokens[0].text != kw {
            return Err(line.error(0, expected));
        }
        self.pos += 1;
        Ok(line.clone())
    }

    /// `kw <int>`.
    pub fn keyword_int(&mut self, kw: &str) -> Result<i64, FormatError> {
        let line = self.keyword(kw)?;
        let v = line.int(1)?;
        line.finish(2)?;
        Ok(v)
    }

    /// `kw <count>` with `0 ≤ count ≤ DIM_CAP`.
    pub fn keyword_count(&mut self, kw: &str) -> Result<usize, FormatError> {
        let line = self.keyword(kw)?;
        let v = line.int(1)?;
        line.finish(2)?;
        match usize::try_from(v) {
            Ok(c) if c <= DIM_CAP => Ok(c),
            _ => Err(line.error(1, format!("a count in 0..={DIM_CAP}"))),
        }
    }

    /// `kw v1 … v_len`.
    pub fn keyword_row(&mut self, kw: &str, len: usize) -> Result<Vec<i64>, FormatError> {
        self.keyword(kw)?.ints(1, Some(len))
    }

    /// `rows` lines of `cols` integers. Zero-width rows are not written.
    pub fn matrix(&mut self, rows: usize, cols: usize) -> Result<Vec<Vec<i64>>, FormatError> {
        if cols == 0 {
            return Ok(vec![Vec::new(); rows]);
        }
        let mut out = Vec::new();
        for _ in 0..rows {
            let line = self.next_line(&format!("a row of {cols} integers"))?;
            out.push(line.ints(0, Some(cols))?);
        }
        Ok(out)
    }

    pub fn finish(&self) -> Result<(), FormatError> {
        match self.peek() {
            Some(line) => Err(line.error(0, "end of input")),
            None => Ok(()),
        }
    }
}
