//! Reduction of decoded text to a stream of elementary units (EUs).
//!
//! Natural-language mode deletes punctuation in place and splits on
//! whitespace; code mode strips comments, keeps string/character literals
//! opaque, and makes every remaining punctuation or operator character a
//! single-character EU.

use std::iter::Peekable;
use std::str::Chars;

use unicode_properties::{GeneralCategoryGroup, UnicodeGeneralCategory};

/// Case folding applied to every non-literal token.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Fold {
    /// Uppercase (the default: EU tables are conventionally upper-cased).
    #[default]
    Upper,
    Lower,
    /// Keep tokens verbatim.
    None,
}

impl Fold {
    fn apply(self, token: &str) -> String {
        match self {
            Fold::Upper => token.to_uppercase(),
            Fold::Lower => token.to_lowercase(),
            Fold::None => token.to_owned(),
        }
    }
}

/// Source language for code-mode tokenization.
///
/// Java and C++ share the `//` / `/* */` comment syntax and the literal
/// forms this tokenizer cares about, so the two currently behave
/// identically; the distinction is kept for reporting and forward
/// compatibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CodeLang {
    Java,
    Cpp,
}

/// How a corpus is reduced to EUs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Natural,
    Java,
    Cpp,
}

impl Mode {
    pub fn code_lang(self) -> Option<CodeLang> {
        match self {
            Mode::Natural => None,
            Mode::Java => Some(CodeLang::Java),
            Mode::Cpp => Some(CodeLang::Cpp),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::Natural => "natural",
            Mode::Java => "java",
            Mode::Cpp => "cpp",
        }
    }
}

/// The ordered EUs extracted from one corpus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TokenStream {
    tokens: Vec<String>,
    mode: Mode,
    fold: Fold,
}

impl TokenStream {
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn fold(&self) -> Fold {
        self.fold
    }

    pub fn iter(&self) -> std::slice::Iter<'_, String> {
        self.tokens.iter()
    }
}

/// True for characters deleted in natural mode: Unicode general
/// categories P (punctuation) and S (symbols).
fn is_punctuation(c: char) -> bool {
    matches!(
        c.general_category_group(),
        GeneralCategoryGroup::Punctuation | GeneralCategoryGroup::Symbol
    )
}

/// Punctuation/operator characters in code mode. `_` is an identifier
/// constituent in Java and C++, not an operator, so it stays inside
/// tokens even though Unicode files it under P.
fn is_code_punctuation(c: char) -> bool {
    c != '_' && is_punctuation(c)
}

/// Tokenize natural-language text: punctuation and symbol characters are
/// deleted in place (never split points, so "don't" folds to DONT) and the
/// remainder is split on whitespace.
///
/// Splitting happens on every character with the Unicode White_Space
/// property, a superset of the space/\f/\n/\r/\t/\v delimiter set, which
/// keeps the no-whitespace-inside-tokens invariant over the full range of
/// Unicode input.
pub fn tokenize_natural(text: &str, fold: Fold) -> TokenStream {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for c in text.chars() {
        if c.is_whitespace() {
            if !current.is_empty() {
                tokens.push(fold.apply(&current));
                current.clear();
            }
        } else if !is_punctuation(c) {
            current.push(c);
        }
    }
    if !current.is_empty() {
        tokens.push(fold.apply(&current));
    }
    TokenStream {
        tokens,
        mode: Mode::Natural,
        fold,
    }
}

/// Copy one string or character literal, opening quote included, stopping
/// after the matching unescaped quote. An unescaped newline terminates the
/// scan without being consumed (error recovery: a stray quote must not
/// swallow the rest of the file).
fn scan_literal(quote: char, chars: &mut Peekable<Chars>) -> String {
    let mut lit = String::new();
    lit.push(quote);
    while let Some(&c) = chars.peek() {
        if c == '\n' {
            break;
        }
        chars.next();
        lit.push(c);
        if c == quote {
            break;
        }
        if c == '\\' {
            if let Some(&escaped) = chars.peek() {
                if escaped != '\n' {
                    chars.next();
                    lit.push(escaped);
                }
            }
        }
    }
    lit
}

/// Replace every `//…end-of-line` and `/*…*/` region with a single space.
///
/// Comment openers inside string or character literals are left alone; an
/// unterminated block comment consumes to end of input. Line comments do
/// not consume their terminating newline.
pub fn strip_comments(src: &str, lang: CodeLang) -> String {
    let _ = lang; // same comment syntax in both supported languages
    let mut out = String::with_capacity(src.len());
    let mut chars = src.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '/' => match chars.peek() {
                Some('/') => {
                    while let Some(&n) = chars.peek() {
                        if n == '\n' {
                            break;
                        }
                        chars.next();
                    }
                    out.push(' ');
                }
                Some('*') => {
                    chars.next();
                    let mut prev = '\0';
                    for n in chars.by_ref() {
                        if prev == '*' && n == '/' {
                            break;
                        }
                        prev = n;
                    }
                    out.push(' ');
                }
                _ => out.push('/'),
            },
            '"' | '\'' => out.push_str(&scan_literal(c, &mut chars)),
            _ => out.push(c),
        }
    }
    out
}

/// Tokenize source code: strips comments, then walks the text keeping
/// string/character literals as single opaque tokens (quotes included,
/// exempt from folding), emitting every punctuation/operator character as
/// its own single-character EU, and folding identifier/number lexemes.
///
/// Multi-character operators are split apart ("++" becomes two "+" EUs).
pub fn tokenize_code(src: &str, lang: CodeLang, fold: Fold) -> TokenStream {
    let stripped = strip_comments(src, lang);
    let mut tokens = Vec::new();
    let mut chars = stripped.chars().peekable();
    let mut current = String::new();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() || c == '"' || c == '\'' || is_code_punctuation(c) {
            if !current.is_empty() {
                tokens.push(fold.apply(&current));
                current.clear();
            }
            chars.next();
            if c == '"' || c == '\'' {
                tokens.push(scan_literal(c, &mut chars));
            } else if !c.is_whitespace() {
                tokens.push(c.to_string());
            }
        } else {
            current.push(c);
            chars.next();
        }
    }
    if !current.is_empty() {
        tokens.push(fold.apply(&current));
    }
    let mode = match lang {
        CodeLang::Java => Mode::Java,
        CodeLang::Cpp => Mode::Cpp,
    };
    TokenStream {
        tokens,
        mode,
        fold,
    }
}

/// Tokenize under the given mode.
pub fn tokenize(text: &str, mode: Mode, fold: Fold) -> TokenStream {
    match mode.code_lang() {
        None => tokenize_natural(text, fold),
        Some(lang) => tokenize_code(text, lang, fold),
    }
}
