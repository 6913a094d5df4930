//! Finite semigroups given by Cayley tables.

use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Largest order accepted by the enumeration and oracle routines.
pub const DEFAULT_ORDER_CAP: usize = 12;

/// A finite semigroup on the elements `0..n`. `table[x][y]` is the index of
/// `x·y`. Construction verifies closure and associativity.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Semigroup {
    name: String,
    table: Vec<Vec<usize>>,
}

/// Index and period of an element: minimal `(k, r)` with `x^(k+r) = x^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ElementProfile {
    pub element: usize,
    pub index_k: usize,
    pub period_r: usize,
}

/// Central elements in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CenterSet {
    pub elements: Vec<usize>,
}

impl CenterSet {
    pub fn contains(&self, z: usize) -> bool {
        self.elements.binary_search(&z).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }
}

impl Semigroup {
    /// Validates a raw table (square, in range, associative).
    pub fn new(name: impl Into<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::NonSquare);
        }
        for (x, row) in table.iter().enumerate() {
            for (y, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::EntryOutOfRange(x, y));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = table[x][y];
                for z in 0..n {
                    if table[xy][z] != table[x][table[y][z]] {
                        return Err(Error::NonAssociative { x, y, z });
                    }
                }
            }
        }
        Ok(Semigroup { name: name.into(), table })
    }

    /// [`Semigroup::new`] from a signed grid, as read from files.
    pub fn from_raw(name: impl Into<String>, raw: &[Vec<i64>]) -> Result<Self> {
        let n = raw.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        if raw.iter().any(|row| row.len() != n) {
            return Err(Error::NonSquare);
        }
        let mut table = Vec::with_capacity(n);
        for (x, row) in raw.iter().enumerate() {
            let mut out = Vec::with_capacity(n);
            for (y, &v) in row.iter().enumerate() {
                if v < 0 || v as u64 >= n as u64 {
                    return Err(Error::EntryOutOfRange(x, y));
                }
                out.push(v as usize);
            }
            table.push(out);
        }
        Semigroup::new(name, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, elems: &[usize]) -> usize {
        let (first, rest) = elems.split_first().expect("empty product");
        rest.iter().fold(*first, |acc, &e| self.mul(acc, e))
    }

    /// `x^k` for `k >= 1`.
    pub fn pow(&self, x: usize, k: usize) -> usize {
        assert!(k >= 1, "semigroup powers start at 1");
        (1..k).fold(x, |acc, _| self.mul(acc, x))
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order()
    }

    pub fn check_element(&self, x: usize) -> Result<()> {
        if x < self.order() {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange(x))
        }
    }

    pub fn check_cap(&self, cap: usize) -> Result<()> {
        if self.order() > cap {
            Err(Error::OrderCapExceeded { order: self.order(), cap })
        } else {
            Ok(())
        }
    }

    pub fn is_central(&self, z: usize) -> bool {
        self.elements().all(|x| self.mul(z, x) == self.mul(x, z))
    }

    pub fn center(&self) -> CenterSet {
        CenterSet { elements: self.elements().filter(|&z| self.is_central(z)).collect() }
    }

    pub fn is_abelian(&self) -> bool {
        self.center().len() == self.order()
    }

    /// Checks `z0` is a central element.
    pub fn require_central(&self, z0: usize) -> Result<()> {
        self.check_element(z0)?;
        if self.is_central(z0) {
            Ok(())
        } else {
            Err(Error::NonCentralZ0(z0))
        }
    }

    pub fn find_identity(&self) -> Option<usize> {
        self.elements()
            .find(|&e| self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    pub fn is_monoid(&self) -> bool {
        self.find_identity().is_some()
    }

    pub fn element_profile(&self, x: usize) -> ElementProfile {
        // powers[i] = x^(i+1); the first repeat fixes both k and r.
        let mut powers: Vec<usize> = alloc::vec![x];
        loop {
            let next = self.mul(*powers.last().unwrap(), x);
            if let Some(pos) = powers.iter().position(|&p| p == next) {
                let k = pos + 1;
                let r = powers.len() + 1 - k;
                return ElementProfile { element: x, index_k: k, period_r: r };
            }
            powers.push(next);
        }
    }

    pub fn profiles(&self) -> Vec<ElementProfile> {
        self.elements().map(|x| self.element_profile(x)).collect()
    }

    /// Least common multiple of all element periods.
    pub fn period_lcm(&self) -> u32 {
        self.elements()
            .map(|x| self.element_profile(x).period_r as u32)
            .fold(1, lcm)
    }

    /// The semigroup with elements renamed by `perm` (old index `x` becomes
    /// `perm[x]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Semigroup> {
        let n = self.order();
        if perm.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: perm.len() });
        }
        let mut table = alloc::vec![alloc::vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                table[perm[x]][perm[y]] = perm[self.mul(x, y)];
            }
        }
        Semigroup::new(self.name.clone(), table)
    }
}

pub(crate) fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}
