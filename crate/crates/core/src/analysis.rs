//! Structural predicates of doubled magmas.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::double::DoubledMagma;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::identity::{check_law, Builtin, CheckOutcome, Law};
use crate::pair_ops::{OpMatrix, PairOp};
use crate::table::CayleyTable;

/// Failure evidence for one flag: element indices, plus a reason when the
/// flag was not evaluated or the indices need context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub elements: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Witness {
    fn elements(elements: Vec<usize>) -> Self {
        Witness {
            elements,
            reason: None,
        }
    }

    fn reason(reason: impl Into<String>) -> Self {
        Witness {
            elements: Vec::new(),
            reason: Some(reason.into()),
        }
    }

    fn with_reason(elements: Vec<usize>, reason: impl Into<String>) -> Self {
        Witness {
            elements,
            reason: Some(reason.into()),
        }
    }
}

pub const NO_INVERSES: &str = "no neutral/inverses";

/// Flags computed by [`analyze`].
///
/// `is_flexible`, `is_left_bol`, `is_right_bol`, `is_moufang` and
/// `is_associative` record whether the law holds on the table, whatever the
/// loop status. The inverse-based flags and `is_diassociative` are false for
/// non-loops, with the reason recorded in `witnesses`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub is_quasigroup: bool,
    pub is_loop: bool,
    pub has_two_sided_inverses: bool,
    pub has_inverse_property: bool,
    pub is_flexible: bool,
    pub is_left_bol: bool,
    pub is_right_bol: bool,
    pub is_moufang: bool,
    pub is_diassociative: bool,
    pub is_associative: bool,
    pub witnesses: BTreeMap<String, Witness>,
}

impl PropertyReport {
    pub const FLAG_NAMES: [&'static str; 10] = [
        "is_quasigroup",
        "is_loop",
        "has_two_sided_inverses",
        "has_inverse_property",
        "is_flexible",
        "is_left_bol",
        "is_right_bol",
        "is_moufang",
        "is_diassociative",
        "is_associative",
    ];

    /// Flag values in the order of [`Self::FLAG_NAMES`].
    pub fn flags(&self) -> [bool; 10] {
        [
            self.is_quasigroup,
            self.is_loop,
            self.has_two_sided_inverses,
            self.has_inverse_property,
            self.is_flexible,
            self.is_left_bol,
            self.is_right_bol,
            self.is_moufang,
            self.is_diassociative,
            self.is_associative,
        ]
    }

    pub fn is_bol_loop(&self) -> bool {
        self.is_loop && (self.is_left_bol || self.is_right_bol)
    }

    pub fn is_moufang_loop(&self) -> bool {
        self.is_loop && self.is_moufang
    }

    /// Implications that must hold between the flags; returns the broken ones.
    pub fn implication_failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.is_moufang && !(self.is_left_bol && self.is_right_bol && self.is_flexible) {
            out.push("moufang => bol and flexible");
        }
        if self.is_associative && !self.is_moufang {
            out.push("associative => moufang");
        }
        if self.is_loop && !self.is_quasigroup {
            out.push("loop => quasigroup");
        }
        if self.has_inverse_property && !self.has_two_sided_inverses {
            out.push("inverse property => two-sided inverses");
        }
        out
    }
}

/// Compiled copies of the built-in laws used by [`analyze`].
pub struct LawSet {
    laws: BTreeMap<Builtin, Law>,
}

impl LawSet {
    pub fn new() -> Self {
        LawSet {
            laws: Builtin::ALL
                .into_iter()
                .map(|b| (b, b.identity().compile()))
                .collect(),
        }
    }

    pub fn get(&self, b: Builtin) -> &Law {
        &self.laws[&b]
    }
}

impl Default for LawSet {
    fn default() -> Self {
        Self::new()
    }
}

pub fn analyze(d: &DoubledMagma) -> PropertyReport {
    analyze_table(d.table(), &LawSet::new())
}

/// Full analysis of an arbitrary magma, with neutral element required at 0.
pub fn analyze_table(t: &CayleyTable, laws: &LawSet) -> PropertyReport {
    let mut w = BTreeMap::new();
    fn record(w: &mut BTreeMap<String, Witness>, flag: &str, witness: Witness) {
        w.insert(flag.to_string(), witness);
    }
    macro_rules! fail {
        ($flag:expr, $witness:expr $(,)?) => {
            record(&mut w, $flag, $witness)
        };
    }

    let is_quasigroup = match t.latin_violation() {
        None => true,
        Some((col, i)) => {
            let what = if col { "column" } else { "row" };
            fail!(
                "is_quasigroup",
                Witness::with_reason(vec![i], format!("{what} {i} repeats an entry"))
            );
            false
        }
    };

    let neutral = t.neutral_element();
    let is_loop = is_quasigroup && neutral == Some(0);
    if !is_loop {
        let reason = match neutral {
            _ if !is_quasigroup => "not a quasigroup".to_string(),
            None => "no two-sided neutral element".to_string(),
            Some(e) => format!("neutral element is {e}, not 0"),
        };
        fail!("is_loop", Witness::reason(reason));
    }

    let n = t.order();
    let inverses: Option<Vec<u32>> = if is_loop {
        let mut inv = Vec::with_capacity(n);
        let mut bad = None;
        for x in 0..n {
            let y = t.row(x).iter().position(|&v| v == 0).unwrap();
            if t.get(y, x) != 0 {
                bad = Some((x, y));
                break;
            }
            inv.push(y as u32);
        }
        match bad {
            None => Some(inv),
            Some((x, y)) => {
                fail!(
                    "has_two_sided_inverses",
                    Witness::with_reason(vec![x, y], format!("{x}*{y} = 0 but {y}*{x} != 0")),
                );
                None
            }
        }
    } else {
        fail!("has_two_sided_inverses", Witness::reason(NO_INVERSES));
        None
    };
    let has_two_sided_inverses = inverses.is_some();

    let law_holds = |w: &mut BTreeMap<String, Witness>,
                     flag: &str,
                     builtins: &[Builtin],
                     inv: Option<&[u32]>| {
        for &b in builtins {
            let witness = match check_law(t, inv, laws.get(b)) {
                Ok(CheckOutcome::Holds) => continue,
                Ok(CheckOutcome::Counterexample(c)) => Witness::with_reason(c.values(), b.name()),
                Err(e) => Witness::reason(e.to_string()),
            };
            record(w, flag, witness);
            return false;
        }
        true
    };

    let has_inverse_property = match &inverses {
        Some(inv) => law_holds(
            &mut w,
            "has_inverse_property",
            &[Builtin::LeftIp, Builtin::RightIp],
            Some(inv),
        ),
        None => {
            fail!("has_inverse_property", Witness::reason(NO_INVERSES));
            false
        }
    };
    let is_flexible = law_holds(&mut w, "is_flexible", &[Builtin::Flexible], None);
    let is_left_bol = law_holds(&mut w, "is_left_bol", &[Builtin::LeftBol], None);
    let is_right_bol = law_holds(&mut w, "is_right_bol", &[Builtin::RightBol], None);
    let is_moufang = law_holds(&mut w, "is_moufang", &Builtin::MOUFANG, None);

    let is_associative = match t.associativity_witness() {
        None => true,
        Some((a, b, c)) => {
            fail!("is_associative", Witness::elements(vec![a, b, c]));
            false
        }
    };

    let is_diassociative = if is_loop {
        match diassociativity_witness(t) {
            None => true,
            Some(elements) => {
                fail!(
                    "is_diassociative",
                    Witness::with_reason(
                        elements,
                        "generators a, b and a non-associative triple inside"
                    ),
                );
                false
            }
        }
    } else {
        fail!("is_diassociative", Witness::reason(NO_INVERSES));
        false
    };

    PropertyReport {
        is_quasigroup,
        is_loop,
        has_two_sided_inverses,
        has_inverse_property,
        is_flexible,
        is_left_bol,
        is_right_bol,
        is_moufang,
        is_diassociative,
        is_associative,
        witnesses: w,
    }
}

/// Smallest product-closed subset containing `0` and `seeds`.
pub fn closure(t: &CayleyTable, seeds: &[usize]) -> Vec<usize> {
    let mut member = vec![false; t.order()];
    let mut elems = Vec::new();
    for &s in std::iter::once(&0).chain(seeds) {
        if !member[s] {
            member[s] = true;
            elems.push(s);
        }
    }
    let mut done = 0;
    while done < elems.len() {
        let u = elems[done];
        done += 1;
        let mut i = 0;
        while i < done {
            let v = elems[i];
            for p in [t.get(u, v), t.get(v, u)] {
                if !member[p] {
                    member[p] = true;
                    elems.push(p);
                }
            }
            i += 1;
        }
    }
    elems.sort_unstable();
    elems
}

fn subset_associativity_witness(t: &CayleyTable, elems: &[usize]) -> Option<[usize; 3]> {
    for &a in elems {
        for &b in elems {
            let ab = t.get(a, b);
            for &c in elems {
                if t.get(ab, c) != t.get(a, t.get(b, c)) {
                    return Some([a, b, c]);
                }
            }
        }
    }
    None
}

/// Checks that every two-generated submagma is associative. Returns
/// `[a, b, x, y, z]` for the first failing pair `a <= b`.
pub fn diassociativity_witness(t: &CayleyTable) -> Option<Vec<usize>> {
    let n = t.order();
    let mut verified: HashSet<Vec<usize>> = HashSet::new();
    for a in 0..n {
        for b in a..n {
            let sub = closure(t, &[a, b]);
            if verified.contains(&sub) {
                continue;
            }
            if let Some([x, y, z]) = subset_associativity_witness(t, &sub) {
                return Some(vec![a, b, x, y, z]);
            }
            verified.insert(sub);
        }
    }
    None
}

pub const LOOP_ALPHA: [PairOp; 2] = [PairOp::I, PairOp::S];
pub const LOOP_BETA: [PairOp; 4] = [PairOp::I, PairOp::S, PairOp::T3, PairOp::ST];
pub const LOOP_GAMMA: [PairOp; 4] = [PairOp::I, PairOp::S, PairOp::T, PairOp::ST3];

/// Closed-form loop test: `α ∈ {i,s}`, `β ∈ {i,s,t3,st}`, `γ ∈ {i,s,t,st3}`.
pub fn lemma1_gate(m: &OpMatrix) -> bool {
    LOOP_ALPHA.contains(&m.alpha) && LOOP_BETA.contains(&m.beta) && LOOP_GAMMA.contains(&m.gamma)
}

pub type Triple = (PairOp, PairOp, PairOp);

/// The eight `(β, γ, δ)` that can give a diassociative loop with `α = i`
/// over some nonabelian group.
pub const DIASSOCIATIVE_CANDIDATES: [Triple; 8] = {
    use PairOp::*;
    [
        (I, I, I),
        (T3, I, ST),
        (S, S, S),
        (ST, S, T3),
        (T3, T, T2),
        (I, T, ST3),
        (S, ST3, T),
        (ST, ST3, ST2),
    ]
};

/// The `(γ, δ)` pairs left by the left-alternative filter, over some
/// nonabelian group.
pub const LEFT_ALTERNATIVE_CANDIDATES: [(PairOp, PairOp); 8] = {
    use PairOp::*;
    [
        (I, I),
        (I, ST),
        (S, S),
        (S, T3),
        (T, T2),
        (T, ST3),
        (ST3, T),
        (ST3, ST2),
    ]
};

/// Result of the two-stage diassociativity filter over one group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiassStages {
    /// `(γ, δ)` with `(x,x)δ · y = (x, (x,y)γ)δ` for all `x, y`.
    pub left_alternative_pairs: BTreeSet<(PairOp, PairOp)>,
    /// `(β, γ, δ)` that additionally satisfy `(x, (y,x)β)δ = ((x,y)γ, x)δ`.
    pub triples: BTreeSet<Triple>,
}

/// Brute-forces, over all `(x, y)`, the two identities that
/// `x̄x̄·y = x̄·x̄y` and `x̄(yx̄) = (x̄y)x̄` reduce to when `α = i`.
pub fn diass_stages(g: &Group) -> Result<DiassStages> {
    if g.is_abelian() {
        return Err(Error::Hypothesis(
            "diassociativity filter requires a nonabelian group".into(),
        ));
    }
    let n = g.order();
    let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y)));

    let left_alternative_pairs: BTreeSet<_> = LOOP_GAMMA
        .into_iter()
        .flat_map(|gamma| PairOp::ALL.into_iter().map(move |delta| (gamma, delta)))
        .filter(|&(gamma, delta)| {
            pairs().all(|(x, y)| {
                g.mul(delta.eval(g, x, x), y) == delta.eval(g, x, gamma.eval(g, x, y))
            })
        })
        .collect();

    let triples = LOOP_BETA
        .into_iter()
        .flat_map(|beta| {
            left_alternative_pairs
                .iter()
                .map(move |&(gamma, delta)| (beta, gamma, delta))
        })
        .filter(|&(beta, gamma, delta)| {
            pairs().all(|(x, y)| {
                delta.eval(g, x, beta.eval(g, y, x)) == delta.eval(g, gamma.eval(g, x, y), x)
            })
        })
        .collect();

    Ok(DiassStages {
        left_alternative_pairs,
        triples,
    })
}

pub fn diass_triples(g: &Group) -> Result<BTreeSet<Triple>> {
    Ok(diass_stages(g)?.triples)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::double::{build_double, chein};
    use crate::group::build_group;
    use crate::identity::check_identity;
    use crate::pair_ops::{named_matrix, NamedMatrix};
    use PairOp::*;

    fn grp(s: &str) -> Arc<Group> {
        Arc::new(build_group(&s.parse().unwrap()).unwrap())
    }

    #[test]
    fn chein_s3_report() {
        let r = analyze(&chein(grp("S3")));
        assert!(r.is_loop && r.is_moufang && r.is_diassociative);
        assert!(!r.is_associative);
        assert_eq!(r.witnesses["is_associative"].elements.len(), 3);
        assert!(r.implication_failures().is_empty());
    }

    #[test]
    fn bad_alpha_is_not_a_loop() {
        let r = analyze(&build_double(grp("S3"), OpMatrix::new(T, I, I, I)));
        assert!(r.is_quasigroup);
        assert!(!r.is_loop);
        assert!(!r.has_two_sided_inverses && !r.is_diassociative && !r.has_inverse_property);
        assert_eq!(
            r.witnesses["has_two_sided_inverses"].reason.as_deref(),
            Some(NO_INVERSES)
        );
    }

    #[test]
    fn swapped_quarters_loop_is_not_moufang() {
        let r = analyze(&build_double(grp("S3"), OpMatrix::new(I, S, S, S)));
        assert!(r.is_loop);
        assert!(!r.is_moufang);
    }

    #[test]
    fn lemma1_gate_examples() {
        assert!(lemma1_gate(&named_matrix(NamedMatrix::MC)));
        assert!(!lemma1_gate(&OpMatrix::new(T, I, I, I)));
        assert_eq!(OpMatrix::all().filter(lemma1_gate).count(), 2 * 4 * 4 * 8);
    }

    #[test]
    fn lemma1_gate_matches_analysis_on_s3() {
        let g = grp("S3");
        let laws = LawSet::new();
        for m in OpMatrix::all() {
            let d = build_double(g.clone(), m);
            assert_eq!(
                analyze_table(d.table(), &laws).is_loop,
                lemma1_gate(&m),
                "{m}"
            );
        }
    }

    /// Independent oracle: test the two diassociativity consequences directly
    /// on the doubled table, for α = i.
    fn oracle_triples(g: &Arc<Group>) -> (BTreeSet<(PairOp, PairOp)>, BTreeSet<Triple>) {
        let n = g.order();
        let mut pairs = BTreeSet::new();
        let mut triples = BTreeSet::new();
        for beta in LOOP_BETA {
            for gamma in LOOP_GAMMA {
                for delta in PairOp::ALL {
                    let d = build_double(g.clone(), OpMatrix::new(I, beta, gamma, delta));
                    let t = d.table();
                    let mut left_alt = true;
                    let mut flex = true;
                    for x in 0..n {
                        let xb = n + x;
                        for y in 0..n {
                            left_alt &= t.get(t.get(xb, xb), y) == t.get(xb, t.get(xb, y));
                            flex &= t.get(xb, t.get(y, xb)) == t.get(t.get(xb, y), xb);
                        }
                    }
                    if left_alt {
                        pairs.insert((gamma, delta));
                    }
                    if left_alt && flex {
                        triples.insert((beta, gamma, delta));
                    }
                }
            }
        }
        (pairs, triples)
    }

    #[test]
    fn diass_filter_matches_table_oracle() {
        for s in ["S3", "D8", "Q8", "D10", "S3xC2"] {
            let g = grp(s);
            let stages = diass_stages(&g).unwrap();
            let (pairs, triples) = oracle_triples(&g);
            assert_eq!(stages.left_alternative_pairs, pairs, "{s}");
            assert_eq!(stages.triples, triples, "{s}");
            let candidates: BTreeSet<_> = DIASSOCIATIVE_CANDIDATES.into_iter().collect();
            assert!(stages.triples.is_subset(&candidates), "{s}");
        }
    }

    #[test]
    fn diass_filter_on_s3() {
        // values frozen from the table oracle above
        let stages = diass_stages(&grp("S3")).unwrap();
        let expected: BTreeSet<Triple> = [
            (I, I, I),
            (I, T, ST3),
            (S, ST3, T),
            (T3, I, ST),
            (T3, T, T2),
            (ST, S, T3),
        ]
        .into_iter()
        .collect();
        assert_eq!(stages.triples, expected);
        // xxy = xyx fails, so no gamma = i, delta = s
        assert!(!stages.left_alternative_pairs.contains(&(I, S)));
        // both pairs needing xxy = yxx drop out when the center index exceeds 2
        assert!(!stages.left_alternative_pairs.contains(&(S, S)));
        assert!(!stages.left_alternative_pairs.contains(&(ST3, ST2)));
    }

    #[test]
    fn diass_filter_on_d8_keeps_all_candidates() {
        let stages = diass_stages(&grp("D8")).unwrap();
        let pairs: BTreeSet<_> = LEFT_ALTERNATIVE_CANDIDATES.into_iter().collect();
        let triples: BTreeSet<_> = DIASSOCIATIVE_CANDIDATES.into_iter().collect();
        assert_eq!(stages.left_alternative_pairs, pairs);
        assert_eq!(stages.triples, triples);
    }

    #[test]
    fn diass_filter_rejects_abelian() {
        assert!(matches!(
            diass_triples(&grp("C4")),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn closure_of_generators() {
        let d = chein(grp("S3"));
        assert_eq!(closure(d.table(), &[0, 0]), vec![0]);
        // a 3-cycle generates a subgroup of order 3
        let c = closure(d.table(), &[3]);
        assert_eq!(c.len(), 3);
        // S3 plus a bar generates everything
        assert_eq!(closure(d.table(), &[1, 3, 6]).len(), 12);
    }

    #[test]
    fn associativity_flag_matches_dsl() {
        let g = grp("S3");
        let laws = LawSet::new();
        let assoc = crate::identity::builtin("associativity").unwrap();
        for m in OpMatrix::all().step_by(37) {
            let d = build_double(g.clone(), m);
            let r = analyze_table(d.table(), &laws);
            assert_eq!(
                r.is_associative,
                check_identity(d.table(), &assoc).unwrap().holds(),
                "{m}"
            );
        }
    }

    #[test]
    fn non_latin_table() {
        let t = CayleyTable::from_rows(&[vec![0, 1], vec![1, 1]]).unwrap();
        let r = analyze_table(&t, &LawSet::new());
        assert!(!r.is_quasigroup && !r.is_loop);
        assert_eq!(r.witnesses["is_quasigroup"].elements, vec![1]);
    }
}
