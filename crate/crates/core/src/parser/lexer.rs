use crate::error::{ParseError, ParseErrorKind, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(usize),
    Not,
    And,
    Or,
    Implies,
    Iff,
    EqEq,
    NotEq,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Semi,
    Dot,
    Colon,
    Slash,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(n) => format!("`{n}`"),
            Tok::Not => "`!`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Implies => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::NotEq => "`!=`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

/// Splits `source` into tokens. Identifiers may contain `-` when it is
/// followed by a letter, so section keywords like `init-true` lex as one token
/// while `p->q` still lexes as an implication.
pub fn tokenize(source: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = source.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    while i < chars.len() {
        let c = chars[i];
        let span = SourceSpan::new(line, col);
        let peek = chars.get(i + 1).copied();
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };

        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut i, &mut col);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() {
                let ch = chars[i];
                let dash_word = ch == '-'
                    && chars.get(i + 1).is_some_and(|n| n.is_alphabetic());
                if ch.is_alphanumeric() || ch == '_' || ch == '\'' || dash_word {
                    i += 1;
                } else {
                    break;
                }
            }
            col += i - start;
            tokens.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                span,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            let text: String = chars[start..i].iter().collect();
            let n = text.parse().map_err(|_| {
                ParseError::new(ParseErrorKind::Syntax, span.clone(), "number out of range")
            })?;
            tokens.push(Token {
                tok: Tok::Number(n),
                span,
            });
            continue;
        }

        let (tok, len) = match (c, peek) {
            ('!', Some('=')) => (Tok::NotEq, 2),
            ('!', _) | ('~', _) | ('¬', _) => (Tok::Not, 1),
            ('=', Some('=')) => (Tok::EqEq, 2),
            ('=', _) => (Tok::EqEq, 1),
            ('&', Some('&')) => (Tok::And, 2),
            ('&', _) | ('∧', _) => (Tok::And, 1),
            ('|', Some('|')) => (Tok::Or, 2),
            ('|', _) | ('∨', _) => (Tok::Or, 1),
            ('-', Some('>')) => (Tok::Implies, 2),
            ('⊃', _) | ('→', _) => (Tok::Implies, 1),
            ('<', Some('-')) if chars.get(i + 2) == Some(&'>') => (Tok::Iff, 3),
            ('≡', _) | ('↔', _) => (Tok::Iff, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('[', _) => (Tok::LBracket, 1),
            (']', _) => (Tok::RBracket, 1),
            ('{', _) => (Tok::LBrace, 1),
            ('}', _) => (Tok::RBrace, 1),
            (',', _) => (Tok::Comma, 1),
            (';', _) => (Tok::Semi, 1),
            ('.', _) => (Tok::Dot, 1),
            (':', _) => (Tok::Colon, 1),
            ('/', _) => (Tok::Slash, 1),
            _ => {
                return Err(ParseError::new(
                    ParseErrorKind::Syntax,
                    span,
                    format!("unexpected character `{c}`"),
                ))
            }
        };
        advance(len, &mut i, &mut col);
        tokens.push(Token { tok, span });
    }

    tokens.push(Token {
        tok: Tok::Eof,
        span: SourceSpan::new(line, col),
    });
    Ok(tokens)
}
