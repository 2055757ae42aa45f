//! The eight pair-multiplications `(x, y) ↦ (x^i y^j)^k` on a group.
//!
//! They are the elements of the dihedral group of order 8 generated by
//! `s: (x, y) ↦ (y, x)` and `t: (x, y) ↦ (y⁻¹, x)`, acting on the right:
//! `st` means "apply `s`, then `t`". Each element is identified with the
//! binary operation obtained by multiplying the transformed pair.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::Group;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairOp {
    /// `(x, y)`, giving `xy`
    I,
    /// `(y, x)`, giving `yx`
    S,
    /// `(y⁻¹, x)`, giving `y⁻¹x`
    T,
    /// `(x⁻¹, y⁻¹)`, giving `x⁻¹y⁻¹`
    T2,
    /// `(y, x⁻¹)`, giving `yx⁻¹`
    T3,
    /// `(x⁻¹, y)`, giving `x⁻¹y`
    ST,
    /// `(y⁻¹, x⁻¹)`, giving `y⁻¹x⁻¹`
    ST2,
    /// `(x, y⁻¹)`, giving `xy⁻¹`
    ST3,
}

/// One coordinate of a transformed pair: which input, and whether inverted.
#[derive(Clone, Copy, PartialEq, Eq)]
struct Lit {
    second: bool,
    inverted: bool,
}

const fn lit(second: bool, inverted: bool) -> Lit {
    Lit { second, inverted }
}

const X: Lit = lit(false, false);
const Y: Lit = lit(true, false);
const XI: Lit = lit(false, true);
const YI: Lit = lit(true, true);

impl PairOp {
    pub const ALL: [PairOp; 8] = [
        PairOp::I,
        PairOp::S,
        PairOp::T,
        PairOp::T2,
        PairOp::T3,
        PairOp::ST,
        PairOp::ST2,
        PairOp::ST3,
    ];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn from_index(i: usize) -> PairOp {
        Self::ALL[i]
    }

    pub const fn symbol(self) -> &'static str {
        match self {
            PairOp::I => "i",
            PairOp::S => "s",
            PairOp::T => "t",
            PairOp::T2 => "t2",
            PairOp::T3 => "t3",
            PairOp::ST => "st",
            PairOp::ST2 => "st2",
            PairOp::ST3 => "st3",
        }
    }

    const fn pair(self) -> [Lit; 2] {
        match self {
            PairOp::I => [X, Y],
            PairOp::S => [Y, X],
            PairOp::T => [YI, X],
            PairOp::T2 => [XI, YI],
            PairOp::T3 => [Y, XI],
            PairOp::ST => [XI, Y],
            PairOp::ST2 => [YI, XI],
            PairOp::ST3 => [X, YI],
        }
    }

    /// The pair-transform `(x, y)ψ`, without the final multiplication.
    pub fn transform(self, g: &Group, x: usize, y: usize) -> (usize, usize) {
        let eval = |l: Lit| {
            let v = if l.second { y } else { x };
            if l.inverted {
                g.inv(v)
            } else {
                v
            }
        };
        let [a, b] = self.pair();
        (eval(a), eval(b))
    }

    /// `(x, y)ψΔ`: transform the pair, then multiply in `g`.
    ///
    /// Indices are not range-checked; see [`apply`] for the checked form.
    #[inline]
    pub fn eval(self, g: &Group, x: usize, y: usize) -> usize {
        let (a, b) = self.transform(g, x, y);
        g.mul(a, b)
    }

    /// `compose(self, then)`.
    #[inline]
    pub fn then(self, then: PairOp) -> PairOp {
        COMPOSE[self.index()][then.index()]
    }

    /// Inverse in the group of pair operations.
    pub fn inverse(self) -> PairOp {
        PairOp::ALL
            .into_iter()
            .find(|&p| self.then(p) == PairOp::I)
            .unwrap()
    }
}

const fn find_op(pair: [Lit; 2]) -> PairOp {
    let mut i = 0;
    while i < 8 {
        let p = PairOp::ALL[i].pair();
        if p[0].second == pair[0].second
            && p[0].inverted == pair[0].inverted
            && p[1].second == pair[1].second
            && p[1].inverted == pair[1].inverted
        {
            return PairOp::ALL[i];
        }
        i += 1;
    }
    panic!("pair transform outside the dihedral group");
}

/// Substitutes the output of `first` into the formula of `then`.
const fn compose_formulas(first: PairOp, then: PairOp) -> PairOp {
    let f = first.pair();
    let t = then.pair();
    let mut out = [X; 2];
    let mut k = 0;
    while k < 2 {
        let src = if t[k].second { f[1] } else { f[0] };
        out[k] = lit(src.second, src.inverted != t[k].inverted);
        k += 1;
    }
    find_op(out)
}

const fn compose_table() -> [[PairOp; 8]; 8] {
    let mut table = [[PairOp::I; 8]; 8];
    let mut a = 0;
    while a < 8 {
        let mut b = 0;
        while b < 8 {
            table[a][b] = compose_formulas(PairOp::ALL[a], PairOp::ALL[b]);
            b += 1;
        }
        a += 1;
    }
    table
}

static COMPOSE: [[PairOp; 8]; 8] = compose_table();

/// `compose(first, then)` is the operation with `(x,y)ρ = ((x,y)first)then`.
pub fn compose(first: PairOp, then: PairOp) -> PairOp {
    first.then(then)
}

/// `(x, y)ψΔ` with range checks on `x` and `y`.
pub fn apply(op: PairOp, x: usize, y: usize, g: &Group) -> Result<usize> {
    let order = g.order();
    for index in [x, y] {
        if index >= order {
            return Err(Error::ElementOutOfRange { index, order });
        }
    }
    Ok(op.eval(g, x, y))
}

impl fmt::Display for PairOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for PairOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        PairOp::ALL
            .into_iter()
            .find(|op| op.symbol() == lower)
            .ok_or_else(|| Error::UnknownPairOp(s.to_string()))
    }
}

impl Serialize for PairOp {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for PairOp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An assignment of pair operations to the four quarters of `(G ∪ Ḡ)²`:
/// `alpha` on `G×G`, `beta` on `G×Ḡ`, `gamma` on `Ḡ×G`, `delta` on `Ḡ×Ḡ`.
///
/// The string form is `"alpha,beta,gamma,delta"`, e.g. `"i,s,st3,t"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpMatrix {
    pub alpha: PairOp,
    pub beta: PairOp,
    pub gamma: PairOp,
    pub delta: PairOp,
}

/// Number of distinct [`OpMatrix`] values.
pub const MATRIX_COUNT: usize = 4096;

impl OpMatrix {
    pub const fn new(alpha: PairOp, beta: PairOp, gamma: PairOp, delta: PairOp) -> Self {
        OpMatrix {
            alpha,
            beta,
            gamma,
            delta,
        }
    }

    /// Position in the canonical order (`alpha` most significant).
    pub fn index(&self) -> usize {
        ((self.alpha.index() * 8 + self.beta.index()) * 8 + self.gamma.index()) * 8
            + self.delta.index()
    }

    pub fn from_index(i: usize) -> OpMatrix {
        assert!(i < MATRIX_COUNT, "matrix index {i} out of range");
        OpMatrix::new(
            PairOp::from_index(i / 512),
            PairOp::from_index(i / 64 % 8),
            PairOp::from_index(i / 8 % 8),
            PairOp::from_index(i % 8),
        )
    }

    /// All 4096 matrices in canonical order.
    pub fn all() -> impl Iterator<Item = OpMatrix> + Clone {
        (0..MATRIX_COUNT).map(OpMatrix::from_index)
    }

    pub fn entries(&self) -> [PairOp; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }
}

impl fmt::Display for OpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.alpha, self.beta, self.gamma, self.delta
        )
    }
}

/// Accepts either `a,b,c,d` or one of the [`NamedMatrix`] names.
impl FromStr for OpMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Ok(named) = s.parse::<NamedMatrix>() {
            return Ok(named.matrix());
        }
        let parts: Vec<&str> = s.split(',').collect();
        let [a, b, c, d] = parts.as_slice() else {
            return Err(Error::BadMatrix(s.to_string()));
        };
        Ok(OpMatrix::new(
            a.parse()?,
            b.parse()?,
            c.parse()?,
            d.parse()?,
        ))
    }
}

impl Serialize for OpMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OpMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The eight matrices that give Moufang loops over a nonabelian group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NamedMatrix {
    GIota,
    GTau,
    MC,
    MSigma,
    OpGIota,
    OpGTau,
    OpMC,
    OpMSigma,
}

impl NamedMatrix {
    pub const ALL: [NamedMatrix; 8] = [
        NamedMatrix::GIota,
        NamedMatrix::GTau,
        NamedMatrix::MC,
        NamedMatrix::MSigma,
        NamedMatrix::OpGIota,
        NamedMatrix::OpGTau,
        NamedMatrix::OpMC,
        NamedMatrix::OpMSigma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedMatrix::GIota => "G_iota",
            NamedMatrix::GTau => "G_tau",
            NamedMatrix::MC => "M_c",
            NamedMatrix::MSigma => "M_sigma",
            NamedMatrix::OpGIota => "op_G_iota",
            NamedMatrix::OpGTau => "op_G_tau",
            NamedMatrix::OpMC => "op_M_c",
            NamedMatrix::OpMSigma => "op_M_sigma",
        }
    }

    pub fn matrix(self) -> OpMatrix {
        named_matrix(self)
    }

    /// Whether the loop is associative over every group (the `G_*` family).
    pub fn is_group_family(self) -> bool {
        matches!(
            self,
            NamedMatrix::GIota | NamedMatrix::GTau | NamedMatrix::OpGIota | NamedMatrix::OpGTau
        )
    }

    pub fn identify(m: &OpMatrix) -> Option<NamedMatrix> {
        NamedMatrix::ALL.into_iter().find(|n| n.matrix() == *m)
    }
}

impl fmt::Display for NamedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim();
        NamedMatrix::ALL
            .into_iter()
            .find(|n| n.name().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| Error::BadMatrix(s.to_string()))
    }
}

pub fn named_matrix(name: NamedMatrix) -> OpMatrix {
    use PairOp::*;
    let [a, b, c, d] = match name {
        NamedMatrix::GIota => [I, I, I, I],
        NamedMatrix::GTau => [I, T3, T, T2],
        NamedMatrix::MC => [I, S, ST3, T],
        NamedMatrix::MSigma => [I, ST, S, T3],
        NamedMatrix::OpGIota => [S, S, S, S],
        NamedMatrix::OpGTau => [S, ST, ST3, ST2],
        NamedMatrix::OpMC => [S, T3, I, ST],
        NamedMatrix::OpMSigma => [S, I, T, ST3],
    };
    OpMatrix::new(a, b, c, d)
}

/// The matrix of the opposite magma: `(sα, sγ, sβ, sδ)`.
pub fn opposite_matrix(m: &OpMatrix) -> OpMatrix {
    let s = PairOp::S;
    OpMatrix::new(
        s.then(m.alpha),
        s.then(m.gamma),
        s.then(m.beta),
        s.then(m.delta),
    )
}

/// `(α, t³β, γt, t²δ)`, the transform carrying `G_iota` to `G_tau` and `M_c`
/// to `M_sigma`.
pub fn t_transform(m: &OpMatrix) -> OpMatrix {
    use PairOp::*;
    OpMatrix::new(m.alpha, T3.then(m.beta), m.gamma.then(T), T2.then(m.delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;
    use PairOp::*;

    fn s3() -> Group {
        build_group(&"S3".parse().unwrap()).unwrap()
    }

    #[test]
    fn apply_formulas_on_s3() {
        let g = s3();
        let n = g.order();
        for x in 0..n {
            for y in 0..n {
                let (xi, yi) = (g.inv(x), g.inv(y));
                let expected = [
                    g.mul(x, y),
                    g.mul(y, x),
                    g.mul(yi, x),
                    g.mul(xi, yi),
                    g.mul(y, xi),
                    g.mul(xi, y),
                    g.mul(yi, xi),
                    g.mul(x, yi),
                ];
                for (op, want) in PairOp::ALL.into_iter().zip(expected) {
                    assert_eq!(apply(op, x, y, &g).unwrap(), want, "{op} at ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn apply_right_neutral_and_cyclic_example() {
        let g = s3();
        for x in 0..6 {
            assert_eq!(apply(I, x, 0, &g).unwrap(), x);
        }
        let c3 = build_group(&"C3".parse().unwrap()).unwrap();
        assert_eq!(apply(ST3, 1, 1, &c3).unwrap(), 0);
    }

    #[test]
    fn apply_range_checks() {
        let g = s3();
        assert!(matches!(
            apply(I, 6, 0, &g),
            Err(Error::ElementOutOfRange { index: 6, order: 6 })
        ));
        assert!(apply(S, 0, 99, &g).is_err());
    }

    #[test]
    fn dihedral_relations() {
        assert_eq!(compose(S, S), I);
        assert_eq!(compose(compose(S, T), S), T3);
        assert_eq!(compose(T, T), T2);
        assert_eq!(compose(T2, T2), I);
        assert_eq!(compose(compose(T, T), compose(T, T)), I);
        // the symbol names are the words they spell
        assert_eq!(compose(S, T), ST);
        assert_eq!(compose(S, T2), ST2);
        assert_eq!(compose(S, T3), ST3);
        assert_eq!(compose(T, T2), T3);
    }

    #[test]
    fn generated_by_s_and_t() {
        let mut seen = vec![I];
        let mut frontier = vec![I];
        while let Some(p) = frontier.pop() {
            for g in [S, T] {
                let q = p.then(g);
                if !seen.contains(&q) {
                    seen.push(q);
                    frontier.push(q);
                }
            }
        }
        assert_eq!(seen.len(), 8);
    }

    #[test]
    fn composition_is_a_group() {
        for a in PairOp::ALL {
            assert_eq!(a.then(a.inverse()), I);
            assert_eq!(I.then(a), a);
            for b in PairOp::ALL {
                for c in PairOp::ALL {
                    assert_eq!(a.then(b).then(c), a.then(b.then(c)));
                }
            }
        }
    }

    #[test]
    fn compose_agrees_with_action_on_s3() {
        let g = s3();
        for a in PairOp::ALL {
            for b in PairOp::ALL {
                let c = compose(a, b);
                for x in 0..6 {
                    for y in 0..6 {
                        let (u, v) = a.transform(&g, x, y);
                        assert_eq!(c.transform(&g, x, y), b.transform(&g, u, v));
                        assert_eq!(apply(c, x, y, &g).unwrap(), b.eval(&g, u, v));
                    }
                }
            }
        }
    }

    #[test]
    fn action_is_faithful_on_nonabelian_groups() {
        for spec in ["S3", "D8", "Q8"] {
            let g = build_group(&spec.parse().unwrap()).unwrap();
            let n = g.order();
            let tables: Vec<Vec<usize>> = PairOp::ALL
                .iter()
                .map(|op| (0..n * n).map(|k| op.eval(&g, k / n, k % n)).collect())
                .collect();
            for i in 0..8 {
                for j in i + 1..8 {
                    assert_ne!(
                        tables[i],
                        tables[j],
                        "{spec}: {} vs {}",
                        PairOp::ALL[i],
                        PairOp::ALL[j]
                    );
                }
            }
        }
    }

    #[test]
    fn i_and_s_coincide_on_abelian_groups() {
        let g = build_group(&"C4".parse().unwrap()).unwrap();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(I.eval(&g, x, y), S.eval(&g, x, y));
            }
        }
    }

    #[test]
    fn names_parse_case_insensitively() {
        assert_eq!("ST3".parse::<PairOp>().unwrap(), ST3);
        assert_eq!(" t2 ".parse::<PairOp>().unwrap(), T2);
        assert!("u".parse::<PairOp>().is_err());
        assert_eq!(
            "M_c".parse::<OpMatrix>().unwrap(),
            named_matrix(NamedMatrix::MC)
        );
        assert_eq!(
            "i,S,st3,T".parse::<OpMatrix>().unwrap(),
            named_matrix(NamedMatrix::MC)
        );
        assert!("i,s,st3".parse::<OpMatrix>().is_err());
        assert!("i,s,st3,t,i".parse::<OpMatrix>().is_err());
    }

    #[test]
    fn matrix_index_round_trip() {
        for (i, m) in OpMatrix::all().enumerate() {
            assert_eq!(m.index(), i);
            assert_eq!(m.to_string().parse::<OpMatrix>().unwrap(), m);
        }
        assert_eq!(OpMatrix::from_index(0).to_string(), "i,i,i,i");
        assert_eq!(OpMatrix::from_index(4095).to_string(), "st3,st3,st3,st3");
    }

    #[test]
    fn named_matrices() {
        assert_eq!(named_matrix(NamedMatrix::MC).to_string(), "i,s,st3,t");
        assert_eq!(named_matrix(NamedMatrix::OpMC).to_string(), "s,t3,i,st");
        assert_eq!(named_matrix(NamedMatrix::GIota).to_string(), "i,i,i,i");
        assert_eq!(named_matrix(NamedMatrix::MSigma).to_string(), "i,st,s,t3");
    }

    #[test]
    fn opposites() {
        let op = |n: NamedMatrix| opposite_matrix(&n.matrix());
        assert_eq!(op(NamedMatrix::MC), NamedMatrix::OpMC.matrix());
        assert_eq!(op(NamedMatrix::GIota).to_string(), "s,s,s,s");
        assert_eq!(op(NamedMatrix::GTau), NamedMatrix::OpGTau.matrix());
        assert_eq!(op(NamedMatrix::MSigma), NamedMatrix::OpMSigma.matrix());
        for m in OpMatrix::all() {
            assert_eq!(opposite_matrix(&opposite_matrix(&m)), m);
        }
    }

    #[test]
    fn t_transform_vectors() {
        assert_eq!(
            t_transform(&NamedMatrix::GIota.matrix()),
            NamedMatrix::GTau.matrix()
        );
        assert_eq!(
            t_transform(&NamedMatrix::MC.matrix()),
            NamedMatrix::MSigma.matrix()
        );
        assert_eq!(t_transform(&OpMatrix::new(I, I, I, I)).alpha, I);
    }
}
