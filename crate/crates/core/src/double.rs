//! Doubling a group `G` into a magma on `G ∪ Ḡ`.
//!
//! Elements `0..n` are `G` itself and `n + x` is the barred copy of `x`.
//! Each quarter of the table uses one pair operation:
//!
//! ```text
//!   x * y = (x,y)α       x * ȳ = bar((x,y)β)
//!   x̄ * y = bar((x,y)γ)  x̄ * ȳ = (x,y)δ
//! ```

use std::sync::Arc;

use serde::Serialize;

use crate::group::{Group, GroupSpec};
use crate::pair_ops::{named_matrix, opposite_matrix, NamedMatrix, OpMatrix};
use crate::table::CayleyTable;

#[derive(Clone, Debug)]
pub struct DoubledMagma {
    table: CayleyTable,
    group: Arc<Group>,
    matrix: OpMatrix,
}

/// Provenance written next to an emitted table.
#[derive(Clone, Debug, Serialize)]
pub struct Sidecar {
    pub group: Option<GroupSpec>,
    pub matrix: OpMatrix,
    pub group_order: usize,
    pub order: usize,
}

impl DoubledMagma {
    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn into_table(self) -> CayleyTable {
        self.table
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn matrix(&self) -> OpMatrix {
        self.matrix
    }

    /// Order of the underlying group; the magma has twice as many elements.
    pub fn group_order(&self) -> usize {
        self.group.order()
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn bar(&self, x: usize) -> usize {
        self.group_order() + x
    }

    pub fn is_barred(&self, x: usize) -> bool {
        x >= self.group_order()
    }

    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            group: self.group.spec().cloned(),
            matrix: self.matrix,
            group_order: self.group_order(),
            order: self.order(),
        }
    }

    /// The magma built from [`opposite_matrix`], whose table is the
    /// transpose of this one.
    pub fn opposite(&self) -> DoubledMagma {
        build_double(self.group.clone(), opposite_matrix(&self.matrix))
    }
}

pub fn build_double(group: impl Into<Arc<Group>>, matrix: OpMatrix) -> DoubledMagma {
    let group = group.into();
    let n = group.order();
    let size = 2 * n;
    let mut cells = vec![0u32; size * size];
    let g = group.as_ref();
    for x in 0..n {
        for y in 0..n {
            cells[x * size + y] = matrix.alpha.eval(g, x, y) as u32;
            cells[x * size + n + y] = (n + matrix.beta.eval(g, x, y)) as u32;
            cells[(n + x) * size + y] = (n + matrix.gamma.eval(g, x, y)) as u32;
            cells[(n + x) * size + n + y] = matrix.delta.eval(g, x, y) as u32;
        }
    }
    DoubledMagma {
        table: CayleyTable::from_cells_unchecked(size, cells),
        group,
        matrix,
    }
}

/// `M(G, 2)`: `x*y = xy`, `x*ȳ = bar(yx)`, `x̄*y = bar(xy⁻¹)`, `x̄*ȳ = y⁻¹x`.
pub fn chein(group: impl Into<Arc<Group>>) -> DoubledMagma {
    build_double(group, named_matrix(NamedMatrix::MC))
}

pub fn opposite(d: &DoubledMagma) -> DoubledMagma {
    d.opposite()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;
    use crate::pair_ops::PairOp;

    fn grp(s: &str) -> Arc<Group> {
        Arc::new(build_group(&s.parse().unwrap()).unwrap())
    }

    #[test]
    fn chein_quarters_by_hand() {
        let g = grp("S3");
        let d = chein(g.clone());
        let t = d.table();
        let n = 6;
        assert_eq!(d.order(), 12);
        for x in 0..n {
            for y in 0..n {
                assert_eq!(t.get(x, y), g.mul(x, y));
                assert_eq!(t.get(x, n + y), n + g.mul(y, x));
                assert_eq!(t.get(n + x, y), n + g.mul(x, g.inv(y)));
                assert_eq!(t.get(n + x, n + y), g.mul(g.inv(y), x));
            }
        }
    }

    #[test]
    fn chein_matches_named_matrix() {
        let g = grp("S3");
        assert_eq!(
            chein(g.clone()).table(),
            build_double(g, named_matrix(NamedMatrix::MC)).table()
        );
    }

    #[test]
    fn chein_associativity_tracks_commutativity() {
        assert!(chein(grp("C3")).table().is_associative());
        assert!(!chein(grp("S3")).table().is_associative());
    }

    #[test]
    fn g_iota_is_direct_product_with_c2() {
        let g = grp("S3");
        let d = build_double(g.clone(), named_matrix(NamedMatrix::GIota));
        let direct = build_group(&"S3xC2".parse().unwrap()).unwrap();
        // (x, b) in S3xC2 has index 2x + b; here it is x + 6b
        let f = |k: usize| (k / 2) + 6 * (k % 2);
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(f(direct.mul(a, b)), d.table().get(f(a), f(b)));
            }
        }
        assert!(d.table().is_associative());
    }

    #[test]
    fn all_doubles_are_latin_and_respect_quarters() {
        for spec in ["S3", "C4", "Q8"] {
            let g = grp(spec);
            let n = g.order();
            for m in OpMatrix::all() {
                let d = build_double(g.clone(), m);
                assert!(d.table().is_latin_square(), "{spec} {m}");
                for r in 0..2 * n {
                    for c in 0..2 * n {
                        let barred = (r >= n) != (c >= n);
                        assert_eq!(d.table().get(r, c) >= n, barred);
                    }
                }
            }
        }
    }

    #[test]
    fn opposite_is_transpose() {
        let g = grp("S3");
        for m in [
            named_matrix(NamedMatrix::MC),
            OpMatrix::new(PairOp::T, PairOp::ST2, PairOp::I, PairOp::S),
        ] {
            let d = build_double(g.clone(), m);
            let op = opposite(&d);
            assert_eq!(op.table(), &d.table().transpose());
            assert_eq!(op.opposite().table(), d.table());
        }
    }

    #[test]
    fn sidecar_records_source() {
        let d = chein(grp("S3"));
        let json = serde_json::to_string(&d.sidecar()).unwrap();
        assert_eq!(
            json,
            r#"{"group":"S3","matrix":"i,s,st3,t","group_order":6,"order":12}"#
        );
    }
}
