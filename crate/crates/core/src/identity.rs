//! Equational identities over product and inverse, checked exhaustively on
//! finite magmas.
//!
//! Grammar:
//!
//! ```text
//! identity := term '=' term
//! term     := factor | term '*' factor      (left-associative)
//! factor   := atom | atom '^-1'
//! atom     := name | '(' term ')'
//! name     := letter+ digit*
//! ```

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::table::CayleyTable;

/// Largest number of distinct variables an identity may use.
pub const MAX_VARIABLES: usize = 4;
/// Largest number of assignments a single check may evaluate.
pub const EVALUATION_BUDGET: u64 = 1_000_000_000;

/// Below this many assignments a check runs on the calling thread.
const PARALLEL_THRESHOLD: u64 = 1 << 18;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Mul(Box<Term>, Box<Term>),
    Inv(Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn inv(a: Term) -> Term {
        Term::Inv(Box::new(a))
    }

    pub fn uses_inverse(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Mul(a, b) => a.uses_inverse() || b.uses_inverse(),
            Term::Inv(_) => true,
        }
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Term::Inv(a) => a.collect_vars(out),
        }
    }

    fn compile(&self, vars: &[String], code: &mut Vec<Instr>) {
        match self {
            Term::Var(v) => code.push(Instr::Load(vars.iter().position(|w| w == v).unwrap())),
            Term::Mul(a, b) => {
                a.compile(vars, code);
                b.compile(vars, code);
                code.push(Instr::Mul);
            }
            Term::Inv(a) => {
                a.compile(vars, code);
                code.push(Instr::Inv);
            }
        }
    }

    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Mul(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

/// Prints with the fewest parentheses that re-parse to the same tree.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Mul(a, b) => {
                write!(f, "{a}*")?;
                b.fmt_factor(f)
            }
            Term::Inv(a) => {
                match **a {
                    Term::Var(_) => write!(f, "{a}")?,
                    _ => write!(f, "({a})")?,
                }
                f.write_str("^-1")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    /// Distinct variable names in order of first appearance, left side first.
    pub variables: Vec<String>,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Identity {
        let mut variables = Vec::new();
        lhs.collect_vars(&mut variables);
        rhs.collect_vars(&mut variables);
        Identity {
            lhs,
            rhs,
            variables,
        }
    }

    pub fn uses_inverse(&self) -> bool {
        self.lhs.uses_inverse() || self.rhs.uses_inverse()
    }

    pub fn compile(&self) -> Law {
        let mut lhs = Vec::new();
        let mut rhs = Vec::new();
        self.lhs.compile(&self.variables, &mut lhs);
        self.rhs.compile(&self.variables, &mut rhs);
        Law {
            variables: self.variables.clone(),
            lhs,
            rhs,
            uses_inverse: self.uses_inverse(),
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_identity(s)
    }
}

pub fn parse_identity(src: &str) -> Result<Identity> {
    let mut p = Parser {
        src: src.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.peek() == Some(b'=') {
        return Err(Error::EmptySide("left"));
    }
    if p.peek().is_none() {
        return Err(Error::EmptySide("left"));
    }
    let lhs = p.term()?;
    p.expect(b'=', "expected '='")?;
    p.skip_ws();
    if p.peek().is_none() {
        return Err(Error::EmptySide("right"));
    }
    let rhs = p.term()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(Identity::new(lhs, rhs))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn expect(&mut self, byte: u8, msg: &str) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(msg))
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() != Some(b'*') {
                return Ok(acc);
            }
            self.pos += 1;
            acc = Term::mul(acc, self.factor()?);
        }
    }

    fn factor(&mut self) -> Result<Term> {
        let atom = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            let start = self.pos;
            self.pos += 1;
            self.skip_ws();
            if self.peek() == Some(b'-') {
                self.pos += 1;
                self.skip_ws();
                if self.peek() == Some(b'1') {
                    self.pos += 1;
                    return Ok(Term::inv(atom));
                }
            }
            return Err(Error::Syntax {
                pos: start,
                msg: "expected '^-1'".into(),
            });
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Term> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.term()?;
                self.expect(b')', "expected ')'")?;
                Ok(inner)
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|b| b.is_ascii_alphabetic()) {
                    self.pos += 1;
                }
                while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
                // names are ASCII by construction
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(Term::var(name))
            }
            Some(_) => Err(self.error("expected a variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Instr {
    Load(usize),
    Mul,
    Inv,
}

/// A compiled identity, ready for repeated evaluation.
#[derive(Clone, Debug)]
pub struct Law {
    variables: Vec<String>,
    lhs: Vec<Instr>,
    rhs: Vec<Instr>,
    uses_inverse: bool,
}

impl Law {
    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn uses_inverse(&self) -> bool {
        self.uses_inverse
    }
}

#[inline]
fn run(
    code: &[Instr],
    table: &CayleyTable,
    inv: &[u32],
    values: &[usize],
    stack: &mut Vec<usize>,
) -> usize {
    stack.clear();
    for &op in code {
        match op {
            Instr::Load(i) => stack.push(values[i]),
            Instr::Mul => {
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                stack.push(table.get(a, b));
            }
            Instr::Inv => {
                let a = stack.pop().unwrap();
                stack.push(inv[a] as usize);
            }
        }
    }
    stack[0]
}

/// An assignment under which the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub assignment: Vec<(String, usize)>,
    pub lhs: usize,
    pub rhs: usize,
}

impl Counterexample {
    pub fn values(&self) -> Vec<usize> {
        self.assignment.iter().map(|(_, v)| *v).collect()
    }
}

/// Printed as `x=3 y=7 z=0 | lhs=5 rhs=9`.
impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, value) in &self.assignment {
            write!(f, "{name}={value} ")?;
        }
        write!(f, "| lhs={} rhs={}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Holds,
    Counterexample(Counterexample),
}

impl CheckOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, CheckOutcome::Holds)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        match self {
            CheckOutcome::Holds => None,
            CheckOutcome::Counterexample(c) => Some(c),
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckOutcome::Holds => f.write_str("holds"),
            CheckOutcome::Counterexample(c) => write!(f, "counterexample: {c}"),
        }
    }
}

/// The map `x ↦ x⁻¹` of a magma with a two-sided neutral element where each
/// element has exactly one two-sided inverse.
pub fn two_sided_inverses(table: &CayleyTable) -> Result<Vec<u32>> {
    let e = table
        .neutral_element()
        .ok_or_else(|| Error::InverseUndefined("no two-sided neutral element".into()))?;
    let n = table.order();
    let mut inv = Vec::with_capacity(n);
    for x in 0..n {
        let mut found = (0..n).filter(|&y| table.get(x, y) == e && table.get(y, x) == e);
        match (found.next(), found.next()) {
            (Some(y), None) => inv.push(y as u32),
            (None, _) => {
                return Err(Error::InverseUndefined(format!(
                    "element {x} has no two-sided inverse"
                )))
            }
            (Some(_), Some(_)) => {
                return Err(Error::InverseUndefined(format!(
                    "element {x} has several two-sided inverses"
                )))
            }
        }
    }
    Ok(inv)
}

fn assignment_count(order: usize, vars: usize) -> Result<u64> {
    if vars > MAX_VARIABLES {
        return Err(Error::TooManyVariables { vars, order });
    }
    let count = (order as u64).checked_pow(vars as u32).unwrap_or(u64::MAX);
    if count > EVALUATION_BUDGET {
        return Err(Error::TooManyVariables { vars, order });
    }
    Ok(count)
}

/// Scans assignments whose first variable lies in `first`, in lexicographic
/// order.
fn scan_block(law: &Law, table: &CayleyTable, inv: &[u32], first: usize) -> Option<Counterexample> {
    let n = table.order();
    let k = law.variables.len();
    let mut values = vec![0usize; k];
    values[0] = first;
    let mut stack = Vec::with_capacity(law.lhs.len().max(law.rhs.len()));
    loop {
        let l = run(&law.lhs, table, inv, &values, &mut stack);
        let r = run(&law.rhs, table, inv, &values, &mut stack);
        if l != r {
            return Some(Counterexample {
                assignment: law
                    .variables
                    .iter()
                    .cloned()
                    .zip(values.iter().copied())
                    .collect(),
                lhs: l,
                rhs: r,
            });
        }
        // odometer over positions 1..k
        let mut i = k;
        loop {
            if i == 1 {
                return None;
            }
            i -= 1;
            values[i] += 1;
            if values[i] < n {
                break;
            }
            values[i] = 0;
        }
    }
}

/// Checks a compiled law; `inverses` must be supplied when the law uses them.
pub fn check_law(table: &CayleyTable, inverses: Option<&[u32]>, law: &Law) -> Result<CheckOutcome> {
    let n = table.order();
    let count = assignment_count(n, law.variables.len())?;
    let inv: &[u32] = match (law.uses_inverse, inverses) {
        (false, _) => &[],
        (true, Some(inv)) => inv,
        (true, None) => return Err(Error::InverseUndefined("no inverse map supplied".into())),
    };
    if law.variables.is_empty() {
        // unreachable through the parser: every side holds a variable
        return Ok(CheckOutcome::Holds);
    }
    let found = if count >= PARALLEL_THRESHOLD {
        (0..n)
            .into_par_iter()
            .find_map_first(|first| scan_block(law, table, inv, first))
    } else {
        (0..n).find_map(|first| scan_block(law, table, inv, first))
    };
    Ok(found.map_or(CheckOutcome::Holds, CheckOutcome::Counterexample))
}

/// Evaluates both sides under every assignment and reports the
/// lexicographically first counterexample.
pub fn check_identity(table: &CayleyTable, id: &Identity) -> Result<CheckOutcome> {
    let law = id.compile();
    assignment_count(table.order(), law.variables.len())?;
    let inverses = if law.uses_inverse {
        Some(two_sided_inverses(table)?)
    } else {
        None
    };
    check_law(table, inverses.as_deref(), &law)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Builtin {
    Associativity,
    Commutativity,
    Flexible,
    LeftBol,
    RightBol,
    Moufang1,
    Moufang2,
    Moufang3,
    Moufang4,
    LeftAlternative,
    RightAlternative,
    LeftIp,
    RightIp,
}

impl Builtin {
    pub const ALL: [Builtin; 13] = [
        Builtin::Associativity,
        Builtin::Commutativity,
        Builtin::Flexible,
        Builtin::LeftBol,
        Builtin::RightBol,
        Builtin::Moufang1,
        Builtin::Moufang2,
        Builtin::Moufang3,
        Builtin::Moufang4,
        Builtin::LeftAlternative,
        Builtin::RightAlternative,
        Builtin::LeftIp,
        Builtin::RightIp,
    ];

    pub const MOUFANG: [Builtin; 4] = [
        Builtin::Moufang1,
        Builtin::Moufang2,
        Builtin::Moufang3,
        Builtin::Moufang4,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Associativity => "associativity",
            Builtin::Commutativity => "commutativity",
            Builtin::Flexible => "flexible",
            Builtin::LeftBol => "left_bol",
            Builtin::RightBol => "right_bol",
            Builtin::Moufang1 => "moufang_1",
            Builtin::Moufang2 => "moufang_2",
            Builtin::Moufang3 => "moufang_3",
            Builtin::Moufang4 => "moufang_4",
            Builtin::LeftAlternative => "left_alternative",
            Builtin::RightAlternative => "right_alternative",
            Builtin::LeftIp => "left_ip",
            Builtin::RightIp => "right_ip",
        }
    }

    pub fn source(self) -> &'static str {
        match self {
            Builtin::Associativity => "(x*y)*z = x*(y*z)",
            Builtin::Commutativity => "x*y = y*x",
            Builtin::Flexible => "x*(y*x) = (x*y)*x",
            Builtin::LeftBol => "x*(y*(x*z)) = (x*(y*x))*z",
            Builtin::RightBol => "((z*x)*y)*x = z*((x*y)*x)",
            Builtin::Moufang1 => "((x*y)*x)*z = x*(y*(x*z))",
            Builtin::Moufang2 => "((x*y)*z)*y = x*(y*(z*y))",
            Builtin::Moufang3 => "(x*y)*(z*x) = (x*(y*z))*x",
            Builtin::Moufang4 => "(x*y)*(z*x) = x*((y*z)*x)",
            Builtin::LeftAlternative => "(x*x)*y = x*(x*y)",
            Builtin::RightAlternative => "(y*x)*x = y*(x*x)",
            Builtin::LeftIp => "x^-1*(x*y) = y",
            Builtin::RightIp => "(y*x)*x^-1 = y",
        }
    }

    pub fn identity(self) -> Identity {
        parse_identity(self.source()).expect("builtin laws parse")
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim();
        Builtin::ALL
            .into_iter()
            .find(|b| b.name().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| Error::UnknownBuiltin(s.to_string()))
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn builtin(name: &str) -> Result<Identity> {
    Ok(name.parse::<Builtin>()?.identity())
}
