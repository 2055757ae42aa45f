//! Dense Cayley tables of finite magmas and their plain-text format.
//!
//! The text format is one line with the order `n`, followed by `n` lines of
//! `n` whitespace-separated element indices. Row `r`, column `c` holds the
//! product `r * c`. Lines starting with `#` are comments.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An `n × n` multiplication table over the elements `0..n`, stored row-major.
///
/// Nothing beyond closure is assumed; this is the representation of an
/// arbitrary finite magma.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    order: usize,
    cells: Vec<u32>,
}

impl CayleyTable {
    pub fn new(order: usize, cells: Vec<u32>) -> Result<Self> {
        if order == 0 {
            return Err(Error::EmptyTable);
        }
        if cells.len() != order * order {
            return Err(Error::BadTableSize {
                expected: order * order,
                got: cells.len(),
            });
        }
        if let Some(pos) = cells.iter().position(|&v| v as usize >= order) {
            return Err(Error::EntryOutOfRange {
                row: pos / order,
                col: pos % order,
                value: cells[pos] as usize,
                order,
            });
        }
        Ok(CayleyTable { order, cells })
    }

    /// Builds a table by evaluating `product` on every ordered pair.
    pub fn from_fn(order: usize, mut product: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        let mut cells = Vec::with_capacity(order * order);
        for r in 0..order {
            for c in 0..order {
                cells.push(product(r, c) as u32);
            }
        }
        Self::new(order, cells)
    }

    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        let mut cells = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(Error::BadTableSize {
                    expected: order * order,
                    got: rows.iter().map(Vec::len).sum(),
                });
            }
            cells.extend(row.iter().map(|&v| v as u32));
        }
        Self::new(order, cells)
    }

    pub(crate) fn from_cells_unchecked(order: usize, cells: Vec<u32>) -> Self {
        debug_assert_eq!(cells.len(), order * order);
        CayleyTable { order, cells }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> usize {
        self.cells[row * self.order + col] as usize
    }

    pub fn row(&self, row: usize) -> &[u32] {
        &self.cells[row * self.order..(row + 1) * self.order]
    }

    pub fn cells(&self) -> &[u32] {
        &self.cells
    }

    pub fn transpose(&self) -> CayleyTable {
        let n = self.order;
        let mut cells = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                cells[c * n + r] = self.cells[r * n + c];
            }
        }
        CayleyTable { order: n, cells }
    }

    /// First row or column that is not a permutation, as `(is_column, index)`.
    pub fn latin_violation(&self) -> Option<(bool, usize)> {
        let n = self.order;
        let mut seen = vec![usize::MAX; n];
        for r in 0..n {
            for c in 0..n {
                let v = self.get(r, c);
                if seen[v] == r {
                    return Some((false, r));
                }
                seen[v] = r;
            }
        }
        seen.fill(usize::MAX);
        for c in 0..n {
            for r in 0..n {
                let v = self.get(r, c);
                if seen[v] == c {
                    return Some((true, c));
                }
                seen[v] = c;
            }
        }
        None
    }

    pub fn is_latin_square(&self) -> bool {
        self.latin_violation().is_none()
    }

    /// The unique two-sided neutral element, if one exists.
    pub fn neutral_element(&self) -> Option<usize> {
        (0..self.order)
            .find(|&e| (0..self.order).all(|x| self.get(e, x) == x && self.get(x, e) == x))
    }

    /// Lexicographically first triple with `(ab)c != a(bc)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.get(a, b);
                for c in 0..n {
                    if self.get(ab, c) != self.get(a, self.get(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order;
        (0..n).all(|r| (r + 1..n).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Serializes to the text format. Output is byte-for-byte deterministic.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(src: &str) -> Result<Self> {
        let mut lines = src
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line_no, header) = lines.next().ok_or(Error::TableFormat {
            line: 1,
            msg: "missing order line".into(),
        })?;
        let order: usize = header.parse().map_err(|_| Error::TableFormat {
            line: line_no,
            msg: format!("order {header:?} is not a decimal integer"),
        })?;
        if order == 0 {
            return Err(Error::TableFormat {
                line: line_no,
                msg: "order must be positive".into(),
            });
        }

        let mut cells = Vec::with_capacity(order * order);
        for _ in 0..order {
            let (line_no, line) = lines.next().ok_or(Error::TableFormat {
                line: line_no,
                msg: format!("expected {order} rows"),
            })?;
            let before = cells.len();
            for tok in line.split_whitespace() {
                let v: usize = tok.parse().map_err(|_| Error::TableFormat {
                    line: line_no,
                    msg: format!("entry {tok:?} is not a decimal integer"),
                })?;
                if v >= order {
                    return Err(Error::TableFormat {
                        line: line_no,
                        msg: format!("entry {v} outside [0,{order})"),
                    });
                }
                cells.push(v as u32);
            }
            if cells.len() - before != order {
                return Err(Error::TableFormat {
                    line: line_no,
                    msg: format!("expected {order} entries, found {}", cells.len() - before),
                });
            }
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::TableFormat {
                line: line_no,
                msg: "trailing data after last row".into(),
            });
        }
        Self::new(order, cells)
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order)?;
        for r in 0..self.order {
            let mut first = true;
            for &v in self.row(r) {
                if !first {
                    f.write_str(" ")?;
                }
                first = false;
                write!(f, "{v}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyTable(order={})", self.order)
    }
}

impl FromStr for CayleyTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_text(s)
    }
}
