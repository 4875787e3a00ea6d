//! Textual expression form for parse trees.
//!
//! ```text
//! expr ::= 'e' '(' name ',' name ')'     a single edge
//!        | 's' '(' expr ',' expr ')'     series composition
//!        | 'p' '(' expr ',' expr ')'     parallel composition
//!        | 'g' '(' expr ',' expr ')'     generalized series composition
//! name ::= [A-Za-z0-9_]+
//! ```
//!
//! Whitespace may appear between tokens and `#` starts a comment running to
//! the end of the line. Diagnostics carry 1-based line and column numbers
//! (columns count characters). Composition errors point at the operator
//! character of the composition that failed.
//!
//! Both the parser and the formatter drive explicit stacks: inputs nest tens
//! of thousands of levels deep and must not recurse.

use std::fmt;
use std::str::Chars;

use crate::tree::{Node, Op, ParseTree, TreeError};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiagnosticKind {
    SyntaxError,
    TerminalMismatch,
    SelfLoop,
    NameCollision,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseDiagnostic {
    pub kind: DiagnosticKind,
    pub line: u32,
    pub column: u32,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseDiagnostic {}

struct Scanner<'a> {
    chars: std::iter::Peekable<Chars<'a>>,
    line: u32,
    column: u32,
}

impl<'a> Scanner<'a> {
    fn new(input: &'a str) -> Self {
        Scanner { chars: input.chars().peekable(), line: 1, column: 1 }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
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

    /// Skip whitespace and `#` comments; stop at the next meaningful char.
    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.peek() {
                    self.bump();
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn pos(&self) -> (u32, u32) {
        (self.line, self.column)
    }

    fn syntax(&self, line: u32, column: u32, message: String) -> ParseDiagnostic {
        let _ = self;
        ParseDiagnostic { kind: DiagnosticKind::SyntaxError, line, column, message }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseDiagnostic> {
        self.skip_trivia();
        let (line, column) = self.pos();
        match self.bump() {
            Some(c) if c == want => Ok(()),
            got => Err(self.syntax(line, column, format!("expected '{want}', found {}", describe(got)))),
        }
    }

    fn name(&mut self) -> Result<(String, u32, u32), ParseDiagnostic> {
        self.skip_trivia();
        let (line, column) = self.pos();
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                out.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if out.is_empty() {
            let got = self.peek();
            return Err(self.syntax(line, column, format!("expected a vertex name, found {}", describe(got))));
        }
        Ok((out, line, column))
    }
}

fn describe(c: Option<char>) -> String {
    match c {
        Some(c) => format!("'{c}'"),
        None => "end of input".to_string(),
    }
}

fn compose_diag(err: TreeError, line: u32, column: u32) -> ParseDiagnostic {
    let kind = match err {
        TreeError::TerminalMismatch { .. } => DiagnosticKind::TerminalMismatch,
        TreeError::SelfLoop { .. } => DiagnosticKind::SelfLoop,
        TreeError::NameCollision { .. } => DiagnosticKind::NameCollision,
        TreeError::BadName { .. } => DiagnosticKind::SyntaxError,
    };
    ParseDiagnostic { kind, line, column, message: err.to_string() }
}

enum Task {
    Expr,
    ExpectComma,
    Reduce { op: Op, line: u32, column: u32 },
}

/// Parse an expression into a tree.
pub fn parse_expr(input: &str) -> Result<ParseTree, ParseDiagnostic> {
    let mut sc = Scanner::new(input);
    let mut tasks = vec![Task::Expr];
    let mut results: Vec<ParseTree> = Vec::new();
    while let Some(task) = tasks.pop() {
        match task {
            Task::Expr => {
                sc.skip_trivia();
                let (line, column) = sc.pos();
                match sc.bump() {
                    Some('e') => {
                        sc.expect('(')?;
                        let (u, ..) = sc.name()?;
                        sc.expect(',')?;
                        let (v, vline, vcol) = sc.name()?;
                        sc.expect(')')?;
                        match ParseTree::leaf(&u, &v) {
                            Ok(t) => results.push(t),
                            // Names are lexically valid here, so the only
                            // possible failure is a self-loop; point at the
                            // repeated endpoint.
                            Err(err) => return Err(compose_diag(err, vline, vcol)),
                        }
                    }
                    Some(c @ ('s' | 'p' | 'g')) => {
                        let op = match c {
                            's' => Op::Series,
                            'p' => Op::Parallel,
                            _ => Op::GSeries,
                        };
                        sc.expect('(')?;
                        tasks.push(Task::Reduce { op, line, column });
                        tasks.push(Task::Expr);
                        tasks.push(Task::ExpectComma);
                        tasks.push(Task::Expr);
                    }
                    got => {
                        return Err(sc.syntax(
                            line,
                            column,
                            format!("expected an expression ('e', 's', 'p' or 'g'), found {}", describe(got)),
                        ))
                    }
                }
            }
            Task::ExpectComma => sc.expect(',')?,
            Task::Reduce { op, line, column } => {
                sc.expect(')')?;
                let right = results.pop().expect("two parsed children");
                let left = results.pop().expect("two parsed children");
                let combined = match op {
                    Op::Series => left.series(right),
                    Op::Parallel => left.parallel(right),
                    Op::GSeries => left.gseries(right),
                };
                results.push(combined.map_err(|e| compose_diag(e, line, column))?);
            }
        }
    }
    sc.skip_trivia();
    let (line, column) = sc.pos();
    if let Some(c) = sc.peek() {
        return Err(sc.syntax(line, column, format!("expected end of input, found '{c}'")));
    }
    let tree = results.pop().expect("one parsed expression");
    debug_assert!(results.is_empty());
    Ok(tree)
}

/// Render a tree in canonical compact form — no whitespace, e.g.
/// `s(e(a,b),e(b,c))`. [`parse_expr`] accepts exactly this shape back.
pub fn format_expr(tree: &ParseTree) -> String {
    enum Emit {
        Node(u32),
        Text(&'static str),
        Name(u32),
    }
    let mut out = String::new();
    let mut stack = vec![Emit::Node(tree.root_id())];
    while let Some(step) = stack.pop() {
        match step {
            Emit::Node(id) => match tree.node(id) {
                Node::Leaf { u, v } => {
                    out.push_str("e(");
                    stack.push(Emit::Text(")"));
                    stack.push(Emit::Name(v));
                    stack.push(Emit::Text(","));
                    stack.push(Emit::Name(u));
                }
                Node::Inner { op, left, right, .. } => {
                    out.push(match op {
                        Op::Series => 's',
                        Op::Parallel => 'p',
                        Op::GSeries => 'g',
                    });
                    out.push('(');
                    stack.push(Emit::Text(")"));
                    stack.push(Emit::Node(right));
                    stack.push(Emit::Text(","));
                    stack.push(Emit::Node(left));
                }
            },
            Emit::Text(s) => out.push_str(s),
            Emit::Name(id) => out.push_str(tree.name(id)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind_at(input: &str) -> (DiagnosticKind, u32, u32) {
        let d = parse_expr(input).unwrap_err();
        (d.kind, d.line, d.column)
    }

    #[test]
    fn roundtrips_compact_form() {
        for text in [
            "e(a,b)",
            "s(e(a,b),e(b,c))",
            "p(e(a,b),e(a,b))",
            "g(e(a,b),e(b,c))",
            "s(p(s(e(x,w),e(w,z)),e(x,z)),e(z,y))",
            "p(e(v0,v1),g(e(v0,v1),e(v1,v2)))",
        ] {
            let tree = parse_expr(text).unwrap();
            assert_eq!(format_expr(&tree), text);
        }
    }

    #[test]
    fn accepts_whitespace_and_comments() {
        let noisy = "# a three-edge path\n s( s( e(a, b), e(b, c) ),\n    e(c, d) ) # done\n";
        let tidy = parse_expr("s(s(e(a,b),e(b,c)),e(c,d))").unwrap();
        assert_eq!(parse_expr(noisy).unwrap(), tidy);
    }

    #[test]
    fn parse_matches_direct_construction() {
        let built = ParseTree::leaf("a", "b")
            .unwrap()
            .series(ParseTree::leaf("b", "c").unwrap())
            .unwrap();
        assert_eq!(parse_expr("s(e(a,b),e(b,c))").unwrap(), built);
    }

    #[test]
    fn self_loop_in_a_leaf_points_at_the_second_endpoint() {
        assert_eq!(kind_at("e(a, a)"), (DiagnosticKind::SelfLoop, 1, 6));
        assert_eq!(kind_at("e(a,a)"), (DiagnosticKind::SelfLoop, 1, 5));
    }

    #[test]
    fn composition_errors_point_at_the_operator() {
        assert_eq!(kind_at("s(e(a,b),e(c,d))"), (DiagnosticKind::TerminalMismatch, 1, 1));
        assert_eq!(kind_at("s(e(a,b),e(b,a))"), (DiagnosticKind::SelfLoop, 1, 1));
        assert_eq!(kind_at("g(e(a,b),e(b,a))"), (DiagnosticKind::NameCollision, 1, 1));
        // A failure deeper in the input is reported at that operator, not
        // at the root.
        assert_eq!(kind_at("p(e(a,b),s(e(a,c),e(d,b)))"), (DiagnosticKind::TerminalMismatch, 1, 10));
    }

    #[test]
    fn positions_track_lines_and_comments() {
        let input = "# header\np(e(a,b),\n  s(e(a,c),e(x,b)))";
        let d = parse_expr(input).unwrap_err();
        assert_eq!((d.kind, d.line, d.column), (DiagnosticKind::TerminalMismatch, 3, 3));
        assert!(d.to_string().starts_with("line 3, column 3:"));
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(kind_at(""), (DiagnosticKind::SyntaxError, 1, 1));
        assert_eq!(kind_at("x(e(a,b),e(b,c))"), (DiagnosticKind::SyntaxError, 1, 1));
        assert_eq!(kind_at("e(a b)"), (DiagnosticKind::SyntaxError, 1, 5));
        assert_eq!(kind_at("e(a,)"), (DiagnosticKind::SyntaxError, 1, 5));
        assert_eq!(kind_at("s(e(a,b),e(b,c)"), (DiagnosticKind::SyntaxError, 1, 16));
        assert_eq!(kind_at("e(a,b))"), (DiagnosticKind::SyntaxError, 1, 7));
        let d = parse_expr("s(e(a,b)e(b,c))").unwrap_err();
        assert_eq!((d.kind, d.line, d.column), (DiagnosticKind::SyntaxError, 1, 9));
        assert!(d.message.contains("expected ','"));
    }

    #[test]
    fn deep_nesting_parses_and_formats_iteratively() {
        // p(p(...p(e(a,b),e(a,b))...,e(a,b)): 30k levels, built left-deep.
        let n = 30_000;
        let mut text = String::with_capacity(2 * n + 8 + 9 * n);
        for _ in 0..n {
            text.push_str("p(");
        }
        text.push_str("e(a,b)");
        for _ in 0..n {
            text.push_str(",e(a,b))");
        }
        let tree = parse_expr(&text).unwrap();
        assert_eq!(tree.leaf_count(), n + 1);
        assert_eq!(format_expr(&tree), text);
    }
}
