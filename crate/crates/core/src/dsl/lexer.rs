use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum TokenKind {
    Ident(String),
    /// Raw text of a decimal literal, sign included.
    Number(String),
    Punct(char),
    Eof,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

impl Token {
    pub fn text(&self) -> String {
        match &self.kind {
            TokenKind::Ident(s) | TokenKind::Number(s) => s.clone(),
            TokenKind::Punct(c) => c.to_string(),
            TokenKind::Eof => "end of input".to_string(),
        }
    }
}

const PUNCT: &[char] = &['{', '}', '[', ']', '(', ')', '=', ';', ',', '|', '&', '!'];

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut tokens = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);

    while i < chars.len() {
        let c = chars[i];
        let start = (line, column);
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
                column += 1;
            }
            continue;
        }

        let begin = i;
        let kind = if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            TokenKind::Ident(chars[begin..i].iter().collect())
        } else if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
            i += 1;
            let digits = |i: &mut usize| {
                let from = *i;
                while *i < chars.len() && chars[*i].is_ascii_digit() {
                    *i += 1;
                }
                *i > from
            };
            digits(&mut i);
            if chars.get(i) == Some(&'.') {
                i += 1;
                if !digits(&mut i) {
                    return Err(lex_error(start, "expected digits after decimal point", &chars[begin..i]));
                }
            }
            if matches!(chars.get(i), Some('e' | 'E')) {
                i += 1;
                if matches!(chars.get(i), Some('+' | '-')) {
                    i += 1;
                }
                if !digits(&mut i) {
                    return Err(lex_error(start, "expected exponent digits", &chars[begin..i]));
                }
            }
            TokenKind::Number(chars[begin..i].iter().collect())
        } else if PUNCT.contains(&c) {
            i += 1;
            TokenKind::Punct(c)
        } else {
            return Err(lex_error(start, "unexpected character", &[c]));
        };
        column += i - begin;
        tokens.push(Token {
            kind,
            line: start.0,
            column: start.1,
        });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        line,
        column,
    });
    Ok(tokens)
}

fn lex_error((line, column): (usize, usize), message: &str, text: &[char]) -> ParseError {
    ParseError {
        line,
        column,
        message: message.to_string(),
        token: text.iter().collect(),
    }
}
