//! Exhaustive classification of all 4096 doubles of a group.

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::Arc;

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::analysis::{
    analyze_table, diass_stages, lemma1_gate, LawSet, PropertyReport, DIASSOCIATIVE_CANDIDATES,
};
use crate::double::build_double;
use crate::error::{Error, Result};
use crate::group::{Group, GroupSpec};
use crate::identity::Builtin;
use crate::morphisms::{
    are_anti_isomorphic, are_isomorphic, fingerprint, lemma5_map, verify_homomorphism, ElementMap,
};
use crate::pair_ops::{opposite_matrix, t_transform, NamedMatrix, OpMatrix, PairOp};
use crate::table::CayleyTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_fail(self) -> bool {
        self == Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    fn new(name: &str, ok: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            status: Status::from_bool(ok),
            detail: detail.into(),
        }
    }

    fn not_applicable(name: &str, detail: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            status: Status::NotApplicable,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkKind {
    Isomorphism,
    AntiIsomorphism,
}

/// Evidence that `to` belongs to the class of `from`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassLink {
    pub from: OpMatrix,
    pub to: OpMatrix,
    pub kind: LinkKind,
    pub map: ElementMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoClass {
    pub members: Vec<OpMatrix>,
    pub witnesses: Vec<ClassLink>,
}

/// Outcome of comparing the Moufang set against the eight named matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem6Result {
    pub status: Status,
    /// Named matrices that did not give Moufang loops.
    pub missing: Vec<OpMatrix>,
    /// Moufang matrices outside the named eight.
    pub unexpected: Vec<OpMatrix>,
    pub notes: Vec<String>,
}

impl Theorem6Result {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Per-matrix reports, serialized as a JSON object keyed by matrix string
/// in canonical order.
#[derive(Clone, Debug)]
pub struct PerMatrix(pub Vec<(OpMatrix, PropertyReport)>);

impl Serialize for PerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (m, r) in &self.0 {
            map.serialize_entry(&m.to_string(), r)?;
        }
        map.end()
    }
}

impl PerMatrix {
    pub fn get(&self, m: &OpMatrix) -> &PropertyReport {
        let (key, report) = &self.0[m.index()];
        debug_assert_eq!(key, m);
        report
    }

    pub fn iter(&self) -> impl Iterator<Item = (&OpMatrix, &PropertyReport)> {
        self.0.iter().map(|(m, r)| (m, r))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Counts {
    pub matrices: usize,
    #[serde(flatten)]
    pub flags: std::collections::BTreeMap<String, usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub group: Option<GroupSpec>,
    pub group_order: usize,
    pub group_abelian: bool,
    pub counts: Counts,
    pub moufang_set: Vec<OpMatrix>,
    pub nonassoc_moufang_classes: Vec<IsoClass>,
    pub theorem6: Theorem6Result,
    pub lemma_checks: Vec<Check>,
    pub cross_checks: Vec<Check>,
    pub bol_not_moufang: Vec<OpMatrix>,
    pub ip_discrepancies: Vec<OpMatrix>,
    pub per_matrix: PerMatrix,
}

impl ClassificationReport {
    /// True when every lemma check and the theorem check passed (or do not
    /// apply).
    pub fn all_passed(&self) -> bool {
        !self.theorem6.status.is_fail() && self.lemma_checks.iter().all(|c| !c.status.is_fail())
    }

    pub fn lemma(&self, name: &str) -> Option<&Check> {
        self.lemma_checks.iter().find(|c| c.name == name)
    }

    pub fn loops(&self) -> impl Iterator<Item = (&OpMatrix, &PropertyReport)> {
        self.per_matrix.iter().filter(|(_, r)| r.is_loop)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// One row per matrix: the matrix string and the ten flags.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["matrix"];
        header.extend(PropertyReport::FLAG_NAMES);
        w.write_record(&header)?;
        for (m, r) in self.per_matrix.iter() {
            let mut row = vec![m.to_string()];
            row.extend(r.flags().iter().map(|f| f.to_string()));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn require_admissible(g: &Group) -> Result<()> {
    if g.order() <= 1 {
        return Err(Error::Hypothesis("G must have order greater than 1".into()));
    }
    if g.is_elementary_abelian_2() {
        return Err(Error::Hypothesis(
            "G must not be an elementary abelian 2-group".into(),
        ));
    }
    Ok(())
}

/// Analyzes all 4096 doubles of `g` on the current rayon pool.
pub fn enumerate(g: &Group) -> Result<ClassificationReport> {
    require_admissible(g)?;
    let group = Arc::new(g.clone());
    let laws = LawSet::new();
    let per_matrix: Vec<(OpMatrix, PropertyReport)> = (0..crate::pair_ops::MATRIX_COUNT)
        .into_par_iter()
        .map(|i| {
            let m = OpMatrix::from_index(i);
            let d = build_double(group.clone(), m);
            (m, analyze_table(d.table(), &laws))
        })
        .collect();
    let per_matrix = PerMatrix(per_matrix);
    assemble(&group, per_matrix)
}

/// [`enumerate`] on a dedicated pool with the given number of threads.
pub fn enumerate_with_threads(g: &Group, threads: usize) -> Result<ClassificationReport> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    pool.install(|| enumerate(g))
}

fn assemble(group: &Arc<Group>, per_matrix: PerMatrix) -> Result<ClassificationReport> {
    let mut flags = std::collections::BTreeMap::new();
    for (i, name) in PropertyReport::FLAG_NAMES.iter().enumerate() {
        let count = per_matrix.iter().filter(|(_, r)| r.flags()[i]).count();
        flags.insert(name.to_string(), count);
    }
    let counts = Counts {
        matrices: per_matrix.0.len(),
        flags,
    };

    let moufang_set: Vec<OpMatrix> = per_matrix
        .iter()
        .filter(|(_, r)| r.is_moufang_loop())
        .map(|(m, _)| *m)
        .collect();
    let nonassoc: Vec<OpMatrix> = moufang_set
        .iter()
        .copied()
        .filter(|m| !per_matrix.get(m).is_associative)
        .collect();
    let nonassoc_moufang_classes = iso_classes(group, &nonassoc)?;

    let bol_not_moufang = per_matrix
        .iter()
        .filter(|(_, r)| r.is_bol_loop() && !r.is_moufang)
        .map(|(m, _)| *m)
        .collect();
    let ip_discrepancies = per_matrix
        .iter()
        .filter(|(_, r)| r.is_loop && r.has_two_sided_inverses && !r.has_inverse_property)
        .map(|(m, _)| *m)
        .collect();

    let theorem6 = theorem6_result(group, &per_matrix, &moufang_set, &nonassoc_moufang_classes);
    let lemma_checks = lemma_checks(group, &per_matrix)?;
    let cross_checks = cross_checks(&per_matrix);

    Ok(ClassificationReport {
        group: group.spec().cloned(),
        group_order: group.order(),
        group_abelian: group.is_abelian(),
        counts,
        moufang_set,
        nonassoc_moufang_classes,
        theorem6,
        lemma_checks,
        cross_checks,
        bol_not_moufang,
        ip_discrepancies,
        per_matrix,
    })
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Partitions loops into (anti)isomorphism classes by union-find over
/// pairwise searches.
fn iso_classes(group: &Arc<Group>, members: &[OpMatrix]) -> Result<Vec<IsoClass>> {
    let tables: Vec<CayleyTable> = members
        .iter()
        .map(|m| build_double(group.clone(), *m).into_table())
        .collect();
    let prints: Vec<_> = tables.iter().map(fingerprint).collect();
    let transposed_prints: Vec<_> = tables.iter().map(|t| fingerprint(&t.transpose())).collect();

    let k = members.len();
    let mut parent: Vec<usize> = (0..k).collect();
    let mut links: Vec<(usize, ClassLink)> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            if find(&mut parent, i) == find(&mut parent, j) {
                continue;
            }
            let link = if prints[i] == prints[j] {
                are_isomorphic(&tables[i], &tables[j])?.map(|map| (LinkKind::Isomorphism, map))
            } else {
                None
            };
            let link = match link {
                Some(l) => Some(l),
                None if prints[i] == transposed_prints[j] => {
                    are_anti_isomorphic(&tables[i], &tables[j])?
                        .map(|map| (LinkKind::AntiIsomorphism, map))
                }
                None => None,
            };
            if let Some((kind, map)) = link {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[rj] = ri;
                links.push((
                    i,
                    ClassLink {
                        from: members[i],
                        to: members[j],
                        kind,
                        map,
                    },
                ));
            }
        }
    }

    let mut classes: Vec<(usize, IsoClass)> = Vec::new();
    for (i, &m) in members.iter().enumerate() {
        let root = find(&mut parent, i);
        match classes.iter_mut().find(|(r, _)| *r == root) {
            Some((_, class)) => class.members.push(m),
            None => classes.push((
                root,
                IsoClass {
                    members: vec![m],
                    witnesses: Vec::new(),
                },
            )),
        }
    }
    for (i, link) in links {
        let root = find(&mut parent, i);
        let (_, class) = classes.iter_mut().find(|(r, _)| *r == root).unwrap();
        class.witnesses.push(link);
    }
    Ok(classes.into_iter().map(|(_, c)| c).collect())
}

fn theorem6_result(
    group: &Group,
    per_matrix: &PerMatrix,
    moufang_set: &[OpMatrix],
    classes: &[IsoClass],
) -> Theorem6Result {
    if group.is_abelian() {
        return Theorem6Result {
            status: Status::NotApplicable,
            missing: Vec::new(),
            unexpected: Vec::new(),
            notes: vec!["theorem hypothesis: G nonabelian".into()],
        };
    }
    let named: BTreeSet<OpMatrix> = NamedMatrix::ALL.iter().map(|n| n.matrix()).collect();
    let found: BTreeSet<OpMatrix> = moufang_set.iter().copied().collect();
    let missing: Vec<OpMatrix> = named.difference(&found).copied().collect();
    let unexpected: Vec<OpMatrix> = found.difference(&named).copied().collect();
    let mut notes = Vec::new();

    for n in NamedMatrix::ALL {
        let r = per_matrix.get(&n.matrix());
        if r.is_associative != n.is_group_family() {
            notes.push(format!(
                "{n} ({}) is {}associative",
                n.matrix(),
                if r.is_associative { "" } else { "not " }
            ));
        }
    }
    let nonassoc_named: BTreeSet<OpMatrix> = NamedMatrix::ALL
        .iter()
        .filter(|n| !n.is_group_family())
        .map(|n| n.matrix())
        .collect();
    let single_class = classes.len() == 1
        && classes[0].members.iter().copied().collect::<BTreeSet<_>>() == nonassoc_named;
    if !single_class {
        notes.push(format!(
            "nonassociative Moufang loops form {} class(es), expected one class of the four M matrices",
            classes.len()
        ));
    }
    let ok = missing.is_empty() && unexpected.is_empty() && notes.is_empty();
    Theorem6Result {
        status: Status::from_bool(ok),
        missing,
        unexpected,
        notes,
    }
}

fn lemma_checks(group: &Arc<Group>, per_matrix: &PerMatrix) -> Result<Vec<Check>> {
    let mut checks = Vec::new();

    let mismatches: Vec<String> = per_matrix
        .iter()
        .filter(|(m, r)| r.is_loop != lemma1_gate(m))
        .map(|(m, _)| m.to_string())
        .collect();
    let loops = per_matrix.iter().filter(|(_, r)| r.is_loop).count();
    checks.push(Check::new(
        "lemma1",
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("{loops} loops, all matching the closed-form gate")
        } else {
            format!("gate disagrees on {}", mismatches.join(" "))
        },
    ));

    let bad: Vec<String> = per_matrix
        .iter()
        .filter(|(_, r)| r.is_loop && !r.has_two_sided_inverses)
        .map(|(m, _)| m.to_string())
        .collect();
    checks.push(Check::new(
        "lemma2_two_sided",
        bad.is_empty(),
        if bad.is_empty() {
            format!("all {loops} loops have two-sided inverses")
        } else {
            format!("missing two-sided inverses: {}", bad.join(" "))
        },
    ));

    let bad: Vec<String> = (0..crate::pair_ops::MATRIX_COUNT)
        .into_par_iter()
        .map(OpMatrix::from_index)
        .filter(|m| {
            let d = build_double(group.clone(), *m);
            build_double(group.clone(), opposite_matrix(m)).table() != &d.table().transpose()
        })
        .map(|m| m.to_string())
        .collect();
    checks.push(Check::new(
        "lemma3",
        bad.is_empty(),
        if bad.is_empty() {
            "opposite matrix gives the transposed table for all 4096 matrices".to_string()
        } else {
            format!("transpose mismatch: {}", bad.join(" "))
        },
    ));

    if group.is_abelian() {
        checks.push(Check::not_applicable("lemma4", "requires G nonabelian"));
    } else {
        let stages = diass_stages(group)?;
        let candidates: BTreeSet<_> = DIASSOCIATIVE_CANDIDATES.into_iter().collect();
        let observed: BTreeSet<_> = per_matrix
            .iter()
            .filter(|(m, r)| m.alpha == PairOp::I && r.is_loop && r.is_diassociative)
            .map(|(m, _)| (m.beta, m.gamma, m.delta))
            .collect();
        let ok = observed.is_subset(&stages.triples) && stages.triples.is_subset(&candidates);
        checks.push(Check::new(
            "lemma4",
            ok,
            format!(
                "{} diassociative loops with alpha=i; {} triples pass the filter; all within the 8 candidates: {}",
                observed.len(),
                stages.triples.len(),
                stages.triples.is_subset(&candidates)
            ),
        ));
    }

    let f = lemma5_map(group);
    let mut ok = true;
    let mut detail = Vec::new();
    for (from, to) in [
        (NamedMatrix::GIota, NamedMatrix::GTau),
        (NamedMatrix::MC, NamedMatrix::MSigma),
    ] {
        let transformed = t_transform(&from.matrix()) == to.matrix();
        let a = build_double(group.clone(), from.matrix());
        let b = build_double(group.clone(), to.matrix());
        let hom = verify_homomorphism(a.table(), b.table(), &f)?;
        ok &= transformed && hom;
        detail.push(format!("{from}->{to}: transform {transformed}, map {hom}"));
    }
    checks.push(Check::new("lemma5", ok, detail.join("; ")));
    Ok(checks)
}

fn cross_checks(per_matrix: &PerMatrix) -> Vec<Check> {
    let loops: Vec<_> = per_matrix.iter().filter(|(_, r)| r.is_loop).collect();

    // the first failing Moufang form is recorded; it must be moufang_1
    let disagree: Vec<String> = loops
        .iter()
        .filter(|(_, r)| {
            !r.is_moufang
                && r.witnesses
                    .get("is_moufang")
                    .and_then(|w| w.reason.as_deref())
                    != Some(Builtin::Moufang1.name())
        })
        .map(|(m, _)| m.to_string())
        .collect();
    let forms = Check::new(
        "moufang_forms_agree",
        disagree.is_empty(),
        if disagree.is_empty() {
            "moufang_1 alone decides the Moufang property on every loop".to_string()
        } else {
            format!(
                "moufang_1 holds but another form fails: {}",
                disagree.join(" ")
            )
        },
    );

    let bad: Vec<String> = loops
        .iter()
        .filter(|(_, r)| r.is_moufang && !r.is_diassociative)
        .map(|(m, _)| m.to_string())
        .collect();
    let diass = Check::new(
        "moufang_implies_diassociative",
        bad.is_empty(),
        if bad.is_empty() {
            "every Moufang loop is diassociative".to_string()
        } else {
            bad.join(" ")
        },
    );

    let bad: Vec<String> = per_matrix
        .iter()
        .filter(|(_, r)| !r.implication_failures().is_empty())
        .map(|(m, r)| format!("{m}: {}", r.implication_failures().join(", ")))
        .collect();
    let implications = Check::new(
        "flag_implications",
        bad.is_empty(),
        if bad.is_empty() {
            "flag implications hold for all matrices".to_string()
        } else {
            bad.join("; ")
        },
    );
    vec![forms, diass, implications]
}

/// Checks the Moufang classification over a nonabelian group.
pub fn verify_theorem6(g: &Group) -> Result<Theorem6Result> {
    if g.is_abelian() {
        return Err(Error::Hypothesis("theorem hypothesis: G nonabelian".into()));
    }
    Ok(enumerate(g)?.theorem6)
}

/// Matrices whose double is a left or right Bol loop without being Moufang.
pub fn search_bol_not_moufang(g: &Group) -> Result<Vec<OpMatrix>> {
    Ok(enumerate(g)?.bol_not_moufang)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn grp(s: &str) -> Group {
        build_group(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn s3_classification() {
        let r = enumerate(&grp("S3")).unwrap();
        assert_eq!(r.counts.flags["is_loop"], 256);
        assert_eq!(r.counts.flags["is_quasigroup"], 4096);
        assert_eq!(r.moufang_set.len(), 8);
        assert_eq!(r.nonassoc_moufang_classes.len(), 1);
        let class = &r.nonassoc_moufang_classes[0];
        assert_eq!(class.members.len(), 4);
        assert!(class.members.contains(&NamedMatrix::MC.matrix()));
        assert_eq!(class.witnesses.len(), 3);
        assert!(r.theorem6.passed(), "{:?}", r.theorem6);
        assert!(r.all_passed(), "{:?}", r.lemma_checks);
        assert!(
            r.cross_checks.iter().all(|c| c.status == Status::Pass),
            "{:?}",
            r.cross_checks
        );
        // no Bol loop over S3 escapes the Moufang set
        assert!(r.bol_not_moufang.is_empty());
    }

    #[test]
    fn c4_controls() {
        let r = enumerate(&grp("C4")).unwrap();
        assert_eq!(r.theorem6.status, Status::NotApplicable);
        assert_eq!(r.lemma("lemma4").unwrap().status, Status::NotApplicable);
        for n in NamedMatrix::ALL {
            let rep = r.per_matrix.get(&n.matrix());
            assert!(rep.is_loop && rep.is_associative, "{n}");
        }
        assert!(r.nonassoc_moufang_classes.is_empty());
        assert!(r.all_passed());
    }

    #[test]
    fn refuses_klein_four_and_trivial() {
        assert!(matches!(
            enumerate(&grp("C2xC2")),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(enumerate(&grp("C1")), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn theorem_refuses_abelian() {
        match verify_theorem6(&grp("C3")) {
            Err(Error::Hypothesis(msg)) => assert_eq!(msg, "theorem hypothesis: G nonabelian"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bol_search_results_are_non_moufang_loops() {
        let g = grp("Q8");
        let found = search_bol_not_moufang(&g).unwrap();
        let named: Vec<_> = NamedMatrix::ALL.iter().map(|n| n.matrix()).collect();
        for m in &found {
            assert!(lemma1_gate(m), "{m}");
            assert!(!named.contains(m), "{m}");
        }
    }

    #[test]
    fn csv_has_one_row_per_matrix() {
        let r = enumerate(&grp("C3")).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4097);
        assert_eq!(
            lines[0],
            "matrix,is_quasigroup,is_loop,has_two_sided_inverses,has_inverse_property,is_flexible,is_left_bol,is_right_bol,is_moufang,is_diassociative,is_associative"
        );
        assert!(lines[1].starts_with("\"i,i,i,i\",true,true,true,true"));
    }
}
