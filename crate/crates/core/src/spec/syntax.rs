//! Relaxed object notation with source positions.
//!
//! A superset of JSON: keys and string values may be bare words
//! (`[A-Za-z_][A-Za-z0-9_.-]*`), trailing commas are accepted, and `//` or
//! `#` start a line comment. `true`, `false` and `null` keep their JSON
//! meaning when bare.

use std::fmt;

#[derive(Clone, Debug, PartialEq)]
pub struct Spanned {
    pub value: Value,
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Str(String),
    Array(Vec<Spanned>),
    Object(Vec<(String, Spanned)>),
}

impl Value {
    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Null => "null",
            Value::Bool(_) => "boolean",
            Value::Int(_) => "integer",
            Value::Str(_) => "string",
            Value::Array(_) => "array",
            Value::Object(_) => "object",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

type PResult<T> = Result<T, SyntaxError>;

fn is_word_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.')
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(SyntaxError {
            line: self.line,
            column: self.column,
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('#') => self.skip_line(),
                Some('/') => {
                    let mut ahead = self.chars.clone();
                    ahead.next();
                    if ahead.next() == Some('/') {
                        self.skip_line();
                    } else {
                        return;
                    }
                }
                _ => return,
            }
        }
    }

    fn skip_line(&mut self) {
        while let Some(c) = self.bump() {
            if c == '\n' {
                break;
            }
        }
    }

    fn expect(&mut self, want: char) -> PResult<()> {
        self.skip_trivia();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => self.error(format!("expected `{want}`, found `{c}`")),
            None => self.error(format!("expected `{want}`, found end of input")),
        }
    }

    fn value(&mut self) -> PResult<Spanned> {
        self.skip_trivia();
        let (line, column) = (self.line, self.column);
        let value = match self.peek() {
            None => return self.error("unexpected end of input"),
            Some('{') => self.object()?,
            Some('[') => self.array()?,
            Some('"') => Value::Str(self.string()?),
            Some(c) if c == '-' || c.is_ascii_digit() => self.number()?,
            Some(c) if is_word_start(c) => match self.word().as_str() {
                "true" => Value::Bool(true),
                "false" => Value::Bool(false),
                "null" => Value::Null,
                w => Value::Str(w.to_string()),
            },
            Some(c) => return self.error(format!("unexpected character `{c}`")),
        };
        Ok(Spanned {
            value,
            line,
            column,
        })
    }

    fn word(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek().filter(|&c| is_word_char(c)) {
            out.push(c);
            self.bump();
        }
        out
    }

    fn number(&mut self) -> PResult<Value> {
        let mut text = String::new();
        if self.peek() == Some('-') {
            text.push('-');
            self.bump();
        }
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            text.push(c);
            self.bump();
        }
        if matches!(self.peek(), Some('.' | 'e' | 'E')) {
            return self.error("only integers are supported");
        }
        match text.parse::<i64>() {
            Ok(v) => Ok(Value::Int(v)),
            Err(_) => self.error(format!("invalid integer `{text}`")),
        }
    }

    fn string(&mut self) -> PResult<String> {
        self.bump(); // opening quote
        let mut out = String::new();
        loop {
            match self.bump() {
                None => return self.error("unterminated string"),
                Some('"') => return Ok(out),
                Some('\\') => match self.bump() {
                    Some('"') => out.push('"'),
                    Some('\\') => out.push('\\'),
                    Some('/') => out.push('/'),
                    Some('n') => out.push('\n'),
                    Some('t') => out.push('\t'),
                    Some('r') => out.push('\r'),
                    Some(c) => return self.error(format!("unsupported escape `\\{c}`")),
                    None => return self.error("unterminated string"),
                },
                Some(c) => out.push(c),
            }
        }
    }

    fn key(&mut self) -> PResult<String> {
        self.skip_trivia();
        match self.peek() {
            Some('"') => self.string(),
            Some(c) if is_word_start(c) => Ok(self.word()),
            Some(c) => self.error(format!("expected a key, found `{c}`")),
            None => self.error("expected a key, found end of input"),
        }
    }

    fn object(&mut self) -> PResult<Value> {
        self.bump();
        let mut fields: Vec<(String, Spanned)> = Vec::new();
        loop {
            self.skip_trivia();
            if self.peek() == Some('}') {
                self.bump();
                return Ok(Value::Object(fields));
            }
            let (line, column) = (self.line, self.column);
            let key = self.key()?;
            if fields.iter().any(|(k, _)| *k == key) {
                return Err(SyntaxError {
                    line,
                    column,
                    message: format!("duplicate key `{key}`"),
                });
            }
            self.expect(':')?;
            let value = self.value()?;
            fields.push((key, value));
            self.skip_trivia();
            match self.peek() {
                Some(',') => {
                    self.bump();
                }
                Some('}') => {}
                Some(c) => return self.error(format!("expected `,` or `}}`, found `{c}`")),
                None => return self.error("unterminated object"),
            }
        }
    }

    fn array(&mut self) -> PResult<Value> {
        self.bump();
        let mut items = Vec::new();
        loop {
            self.skip_trivia();
            if self.peek() == Some(']') {
                self.bump();
                return Ok(Value::Array(items));
            }
            items.push(self.value()?);
            self.skip_trivia();
            match self.peek() {
                Some(',') => {
                    self.bump();
                }
                Some(']') => {}
                Some(c) => return self.error(format!("expected `,` or `]`, found `{c}`")),
                None => return self.error("unterminated array"),
            }
        }
    }
}

pub fn parse(text: &str) -> Result<Spanned, SyntaxError> {
    let mut p = Parser::new(text);
    let v = p.value()?;
    p.skip_trivia();
    if let Some(c) = p.peek() {
        return p.error(format!("trailing input starting with `{c}`"));
    }
    Ok(v)
}
