//! Isomorphisms and anti-isomorphisms between small loops.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Group;
use crate::table::CayleyTable;

/// Largest table order for which [`are_isomorphic`] runs.
pub const MAX_ISO_ORDER: usize = 64;

/// A map on element indices; `images[x]` is the image of `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementMap {
    pub images: Vec<usize>,
}

impl ElementMap {
    pub fn new(images: Vec<usize>) -> Self {
        ElementMap { images }
    }

    pub fn identity(order: usize) -> Self {
        ElementMap::new((0..order).collect())
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_bijection(&self) -> bool {
        let n = self.images.len();
        let mut seen = vec![false; n];
        self.images
            .iter()
            .all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &ElementMap) -> ElementMap {
        ElementMap::new(self.images.iter().map(|&x| then.images[x]).collect())
    }

    pub fn inverse(&self) -> ElementMap {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        ElementMap::new(images)
    }
}

/// Whether `f(r*c) = f(r) ∘ f(c)` for all `r, c`.
pub fn verify_homomorphism(a: &CayleyTable, b: &CayleyTable, f: &ElementMap) -> Result<bool> {
    let n = a.order();
    if b.order() != n {
        return Err(Error::OrderMismatch(n, b.order()));
    }
    if f.len() != n {
        return Err(Error::OrderMismatch(n, f.len()));
    }
    if f.images.iter().any(|&v| v >= n) {
        return Ok(false);
    }
    Ok((0..n).all(|r| (0..n).all(|c| f.apply(a.get(r, c)) == b.get(f.apply(r), f.apply(c)))))
}

/// The map on `G ∪ Ḡ` fixing `G` pointwise and sending `x̄` to the bar of `x⁻¹`.
pub fn lemma5_map(g: &Group) -> ElementMap {
    let n = g.order();
    ElementMap::new((0..n).chain(g.inverses().map(|i| n + i)).collect())
}

/// Length of the cycle of `0` under left translation by `x`, i.e. the least
/// `k` with `x·(x·(…·x)) = 0` (`k` factors).
fn left_order(t: &CayleyTable, x: usize) -> usize {
    let mut p = x;
    let mut k = 1;
    while p != 0 {
        p = t.get(x, p);
        k += 1;
        if k > t.order() + 1 {
            // not reachable in a loop, where left translation permutes the elements
            return usize::MAX;
        }
    }
    k
}

fn right_order(t: &CayleyTable, x: usize) -> usize {
    let mut p = x;
    let mut k = 1;
    while p != 0 {
        p = t.get(p, x);
        k += 1;
        if k > t.order() + 1 {
            return usize::MAX;
        }
    }
    k
}

/// Per-element isomorphism invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ElementPrint {
    left_order: usize,
    right_order: usize,
    square_left_order: usize,
    commutant: usize,
}

fn element_prints(t: &CayleyTable) -> Vec<ElementPrint> {
    let n = t.order();
    (0..n)
        .map(|x| ElementPrint {
            left_order: left_order(t, x),
            right_order: right_order(t, x),
            square_left_order: left_order(t, t.get(x, x)),
            commutant: (0..n).filter(|&y| t.get(x, y) == t.get(y, x)).count(),
        })
        .collect()
}

/// Isomorphism invariants of a whole loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fingerprint {
    prints: BTreeMap<ElementPrint, usize>,
    involutions: usize,
    associative: bool,
}

pub fn fingerprint(t: &CayleyTable) -> Fingerprint {
    let prints = element_prints(t);
    let mut counts = BTreeMap::new();
    for p in &prints {
        *counts.entry(*p).or_insert(0) += 1;
    }
    Fingerprint {
        prints: counts,
        involutions: (1..t.order()).filter(|&x| t.get(x, x) == 0).count(),
        associative: t.is_associative(),
    }
}

fn require_loop(t: &CayleyTable) -> Result<()> {
    if t.order() > MAX_ISO_ORDER {
        return Err(Error::SearchTooLarge(t.order(), MAX_ISO_ORDER));
    }
    if !t.is_latin_square() || t.neutral_element() != Some(0) {
        return Err(Error::NotALoop);
    }
    Ok(())
}

const UNMAPPED: usize = usize::MAX;

struct Search<'a> {
    a: &'a CayleyTable,
    b: &'a CayleyTable,
    pa: Vec<ElementPrint>,
    pb: Vec<ElementPrint>,
    /// Elements of `a` in the order they should be branched on.
    branch_order: Vec<usize>,
    forward: Vec<usize>,
    used: Vec<bool>,
    mapped: Vec<usize>,
}

impl Search<'_> {
    fn assign(&mut self, x: usize, y: usize) -> bool {
        if self.used[y] || self.pa[x] != self.pb[y] {
            return false;
        }
        self.forward[x] = y;
        self.used[y] = true;
        self.mapped.push(x);
        true
    }

    fn undo(&mut self, len: usize) {
        for x in self.mapped.drain(len..) {
            self.used[self.forward[x]] = false;
            self.forward[x] = UNMAPPED;
        }
    }

    /// Extends the partial map through products until it is closed; false
    /// on contradiction.
    fn propagate(&mut self, mut done: usize) -> bool {
        while done < self.mapped.len() {
            let u = self.mapped[done];
            for j in 0..=done {
                let w = self.mapped[j];
                for (l, r) in [(u, w), (w, u)] {
                    let p = self.a.get(l, r);
                    let want = self.b.get(self.forward[l], self.forward[r]);
                    match self.forward[p] {
                        UNMAPPED => {
                            if !self.assign(p, want) {
                                return false;
                            }
                        }
                        img if img != want => return false,
                        _ => {}
                    }
                }
            }
            done += 1;
        }
        true
    }

    fn solve(&mut self) -> bool {
        let Some(&x) = self
            .branch_order
            .iter()
            .find(|&&x| self.forward[x] == UNMAPPED)
        else {
            return true;
        };
        let n = self.a.order();
        for y in 0..n {
            if self.used[y] || self.pa[x] != self.pb[y] {
                continue;
            }
            let len = self.mapped.len();
            if self.assign(x, y) && self.propagate(len) && self.solve() {
                return true;
            }
            self.undo(len);
        }
        false
    }
}

/// Searches for an isomorphism `a → b` fixing the neutral element 0.
///
/// Candidate images are restricted to elements with equal invariants and the
/// rarest invariant classes are branched on first. Returns `Ok(None)` only
/// after the search space is exhausted.
pub fn are_isomorphic(a: &CayleyTable, b: &CayleyTable) -> Result<Option<ElementMap>> {
    require_loop(a)?;
    require_loop(b)?;
    if a.order() != b.order() {
        return Ok(None);
    }
    if fingerprint(a) != fingerprint(b) {
        return Ok(None);
    }
    let n = a.order();
    let pa = element_prints(a);
    let pb = element_prints(b);

    let mut class_size: BTreeMap<ElementPrint, usize> = BTreeMap::new();
    for p in &pa {
        *class_size.entry(*p).or_insert(0) += 1;
    }
    let mut branch_order: Vec<usize> = (1..n).collect();
    branch_order.sort_by_key(|&x| (class_size[&pa[x]], x));

    let mut search = Search {
        a,
        b,
        pa,
        pb,
        branch_order,
        forward: vec![UNMAPPED; n],
        used: vec![false; n],
        mapped: Vec::with_capacity(n),
    };
    if !search.assign(0, 0) || !search.propagate(0) {
        return Ok(None);
    }
    if search.solve() {
        let map = ElementMap::new(search.forward);
        debug_assert!(verify_homomorphism(a, b, &map).unwrap_or(false));
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

/// An isomorphism from `a` onto the opposite of `b`, i.e. a bijection with
/// `f(r*c) = f(c) ∘ f(r)`.
pub fn are_anti_isomorphic(a: &CayleyTable, b: &CayleyTable) -> Result<Option<ElementMap>> {
    are_isomorphic(a, &b.transpose())
}
