//! Theory header parser.
//!
//! Accepted form, after optional whitespace and nestable `(* … *)` comments:
//!
//! ```text
//! theory NAME [imports IMPORT+] [keywords …] [abbrevs …] begin
//! ```
//!
//! Names are bare identifiers (letters, digits, `_`, `'`, `.`, `-`) or
//! double-quoted strings. Keyword and abbreviation declarations are skipped.
//! Nothing after `begin` is read.

use serde::Serialize;

use super::IngestError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoryHeader {
    pub name: String,
    /// Deduplicated, in source order.
    pub imports: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token<'a> {
    Word(&'a str),
    Quoted(&'a str),
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn error(pos: usize, expected: &str) -> IngestError {
        IngestError::ParseError {
            position: pos,
            expected: expected.to_owned(),
        }
    }

    fn skip_trivia(&mut self) -> Result<(), IngestError> {
        loop {
            let trimmed = self.rest().trim_start();
            self.pos = self.src.len() - trimmed.len();
            if !trimmed.starts_with("(*") {
                return Ok(());
            }
            let start = self.pos;
            let mut depth = 0usize;
            let bytes = self.src.as_bytes();
            let mut i = self.pos;
            loop {
                if i + 1 >= bytes.len() {
                    return Err(Self::error(start, "end of comment `*)`"));
                }
                match (bytes[i], bytes[i + 1]) {
                    (b'(', b'*') => {
                        depth += 1;
                        i += 2;
                    }
                    (b'*', b')') => {
                        depth -= 1;
                        i += 2;
                        if depth == 0 {
                            break;
                        }
                    }
                    _ => i += 1,
                }
            }
            self.pos = i;
        }
    }

    /// Next token with its byte offset, or `None` at end of input.
    fn next(&mut self) -> Result<Option<(usize, Token<'a>)>, IngestError> {
        self.skip_trivia()?;
        let start = self.pos;
        let rest = self.rest();
        if rest.is_empty() {
            return Ok(None);
        }
        if let Some(body) = rest.strip_prefix('"') {
            let mut escaped = false;
            for (i, c) in body.char_indices() {
                match c {
                    '\\' if !escaped => escaped = true,
                    '"' if !escaped => {
                        self.pos = start + 1 + i + 1;
                        return Ok(Some((start, Token::Quoted(&body[..i]))));
                    }
                    _ => escaped = false,
                }
            }
            return Err(Self::error(start, "closing `\"`"));
        }
        let mut end = rest.len();
        for (i, c) in rest.char_indices() {
            if c.is_whitespace() || c == '"' || rest[i..].starts_with("(*") {
                end = i;
                break;
            }
        }
        self.pos = start + end;
        Ok(Some((start, Token::Word(&rest[..end]))))
    }
}

fn is_bare_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '\'' | '.' | '-'))
}

fn name_of(tok: &Token<'_>) -> Option<String> {
    match tok {
        Token::Quoted(s) if !s.is_empty() => Some((*s).to_owned()),
        Token::Word(w) if is_bare_name(w) && !is_section_keyword(w) => Some((*w).to_owned()),
        _ => None,
    }
}

fn is_section_keyword(w: &str) -> bool {
    matches!(w, "imports" | "keywords" | "abbrevs" | "begin")
}

pub fn parse_theory_header(source: &str) -> Result<TheoryHeader, IngestError> {
    let mut lex = Lexer::new(source);
    match lex.next()? {
        Some((_, Token::Word("theory"))) => {}
        Some((pos, _)) => return Err(Lexer::error(pos, "`theory`")),
        None => return Err(Lexer::error(source.len(), "`theory`")),
    }
    let name = match lex.next()? {
        Some((pos, tok)) => name_of(&tok).ok_or_else(|| Lexer::error(pos, "theory name"))?,
        None => return Err(Lexer::error(source.len(), "theory name")),
    };

    let mut imports: Vec<String> = Vec::new();
    let mut tok = lex.next()?;
    if let Some((_, Token::Word("imports"))) = tok {
        loop {
            tok = lex.next()?;
            match &tok {
                None => return Err(IngestError::MissingBegin),
                Some((_, Token::Word(w))) if is_section_keyword(w) => break,
                Some((pos, t)) => {
                    let import = name_of(t).ok_or_else(|| Lexer::error(*pos, "import name"))?;
                    if !imports.contains(&import) {
                        imports.push(import);
                    }
                }
            }
        }
        if imports.is_empty() {
            let pos = tok.as_ref().map_or(source.len(), |t| t.0);
            return Err(Lexer::error(pos, "import name"));
        }
    }

    loop {
        match tok {
            None => return Err(IngestError::MissingBegin),
            Some((_, Token::Word("begin"))) => break,
            Some((_, Token::Word("keywords" | "abbrevs"))) => {
                // skip declarations up to the next section keyword
                loop {
                    tok = lex.next()?;
                    match &tok {
                        None => return Err(IngestError::MissingBegin),
                        Some((_, Token::Word(w))) if is_section_keyword(w) && *w != "imports" => {
                            break
                        }
                        _ => {}
                    }
                }
            }
            Some((pos, _)) => {
                return Err(Lexer::error(
                    pos,
                    "`imports`, `keywords`, `abbrevs` or `begin`",
                ))
            }
        }
    }
    Ok(TheoryHeader { name, imports })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn header(name: &str, imports: &[&str]) -> TheoryHeader {
        TheoryHeader {
            name: name.into(),
            imports: imports.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn basic_headers() {
        assert_eq!(
            parse_theory_header(r#"theory Foo imports Main "HOL-Library.Multiset" begin"#).unwrap(),
            header("Foo", &["Main", "HOL-Library.Multiset"])
        );
        assert_eq!(
            parse_theory_header("(* c *) theory A imports B B begin").unwrap(),
            header("A", &["B"])
        );
        assert_eq!(
            parse_theory_header("theory X imports Y").unwrap_err(),
            IngestError::MissingBegin
        );
    }

    #[test]
    fn comments_keywords_and_trailing_text() {
        let src = "(* outer (* nested *) still comment *)\n\
                   theory \"Quoted_Name\"\n  imports\n    Main(* inline *)HOL.Real\n\
                   keywords \"lemma_x\" :: thy_decl and \"foo\" abbrevs \"<=\" = \"\\<le>\"\n\
                   begin\n lemma x: True by simp\nend\n";
        assert_eq!(
            parse_theory_header(src).unwrap(),
            header("Quoted_Name", &["Main", "HOL.Real"])
        );
        assert_eq!(
            parse_theory_header("theory Pure begin").unwrap(),
            header("Pure", &[])
        );
        assert_eq!(
            parse_theory_header("theory K keywords \"x\" :: thy_decl begin").unwrap(),
            header("K", &[])
        );
    }

    #[test]
    fn positioned_errors() {
        let err = parse_theory_header("lemma foo").unwrap_err();
        assert!(matches!(err, IngestError::ParseError { position: 0, .. }));
        let err = parse_theory_header("theory A imports begin").unwrap_err();
        assert!(
            matches!(err, IngestError::ParseError { position: 17, .. }),
            "{err:?}"
        );
        let err = parse_theory_header("theory A foo begin").unwrap_err();
        assert!(matches!(err, IngestError::ParseError { position: 9, .. }));
        let err = parse_theory_header("(* open ").unwrap_err();
        assert!(matches!(err, IngestError::ParseError { position: 0, .. }));
        let err = parse_theory_header("theory \"A").unwrap_err();
        assert!(matches!(err, IngestError::ParseError { position: 7, .. }));
        let err = parse_theory_header("").unwrap_err();
        assert!(matches!(err, IngestError::ParseError { position: 0, .. }));
        let err = parse_theory_header("theory A imports B+C begin").unwrap_err();
        assert!(matches!(err, IngestError::ParseError { position: 17, .. }));
    }
}
