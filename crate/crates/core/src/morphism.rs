//! Involutive automorphisms and anti-automorphisms.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result, Semigroup, DEFAULT_ORDER_CAP};

/// Orders up to this use a plain scan over all permutations.
const FULL_SCAN_MAX: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum MorphismKind {
    Automorphism,
    AntiAutomorphism,
}

impl fmt::Display for MorphismKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MorphismKind::Automorphism => "automorphism",
            MorphismKind::AntiAutomorphism => "anti-automorphism",
        })
    }
}

/// A self-inverse permutation `tau` obeying `tau(xy) = tau(x)tau(y)`
/// (automorphism) or `tau(xy) = tau(y)tau(x)` (anti-automorphism).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InvolutiveMorphism {
    pub kind: MorphismKind,
    pub map: Vec<usize>,
}

impl InvolutiveMorphism {
    pub fn identity(n: usize) -> Self {
        InvolutiveMorphism { kind: MorphismKind::Automorphism, map: (0..n).collect() }
    }

    /// Validates `map` against `s`. On an abelian semigroup the kind is
    /// normalized to automorphism.
    pub fn new(s: &Semigroup, kind: MorphismKind, map: Vec<usize>) -> Result<Self> {
        let n = s.order();
        if map.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: map.len() });
        }
        if let Some(x) = map.iter().position(|&t| t >= n) {
            return Err(Error::InvalidMorphism(format!("image of {x} is out of range")));
        }
        if let Some(x) = (0..n).find(|&x| map[map[x]] != x) {
            return Err(Error::InvalidMorphism(format!("tau(tau({x})) != {x}")));
        }
        if let Some((x, y)) = first_law_violation(s, kind, &map) {
            return Err(Error::InvalidMorphism(format!("{kind} law fails at ({x}, {y})")));
        }
        let kind = if s.is_abelian() { MorphismKind::Automorphism } else { kind };
        Ok(InvolutiveMorphism { kind, map })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &t)| x == t)
    }

    /// Conjugate by a relabeling `perm` (old `x` becomes `perm[x]`).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut map = vec![0; self.map.len()];
        for (x, &t) in self.map.iter().enumerate() {
            map[perm[x]] = perm[t];
        }
        InvolutiveMorphism { kind: self.kind, map }
    }
}

fn law_holds(s: &Semigroup, kind: MorphismKind, map: &[usize], x: usize, y: usize) -> bool {
    let lhs = map[s.mul(x, y)];
    let rhs = match kind {
        MorphismKind::Automorphism => s.mul(map[x], map[y]),
        MorphismKind::AntiAutomorphism => s.mul(map[y], map[x]),
    };
    lhs == rhs
}

fn first_law_violation(s: &Semigroup, kind: MorphismKind, map: &[usize]) -> Option<(usize, usize)> {
    let n = s.order();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| !law_holds(s, kind, map, x, y))
}

/// All involutive morphisms of the requested kind in lexicographic one-line
/// order. On abelian semigroups both kinds coincide; the list is the same for
/// either request and tagged automorphism.
pub fn enumerate_involutive_morphisms(
    s: &Semigroup,
    kind: MorphismKind,
) -> Result<Vec<InvolutiveMorphism>> {
    s.check_cap(DEFAULT_ORDER_CAP)?;
    let (kind, tag) = if s.is_abelian() {
        (MorphismKind::Automorphism, MorphismKind::Automorphism)
    } else {
        (kind, kind)
    };
    let maps = if s.order() <= FULL_SCAN_MAX {
        full_scan(s, kind)
    } else {
        backtrack(s, kind)
    };
    Ok(maps.into_iter().map(|map| InvolutiveMorphism { kind: tag, map }).collect())
}

/// Automorphisms followed by anti-automorphisms (none on abelian
/// semigroups). Indices into this list are the handles used by reports.
pub fn all_involutive_morphisms(s: &Semigroup) -> Result<Vec<InvolutiveMorphism>> {
    let mut out = enumerate_involutive_morphisms(s, MorphismKind::Automorphism)?;
    if !s.is_abelian() {
        out.extend(enumerate_involutive_morphisms(s, MorphismKind::AntiAutomorphism)?);
    }
    Ok(out)
}

fn full_scan(s: &Semigroup, kind: MorphismKind) -> Vec<Vec<usize>> {
    let n = s.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        if (0..n).all(|x| perm[perm[x]] == x) && first_law_violation(s, kind, &perm).is_none() {
            out.push(perm.clone());
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Assigns images position by position, pairing `x -> y` with `y -> x`, and
/// checks the morphism law on every pair whose operands and product are
/// already mapped.
fn backtrack(s: &Semigroup, kind: MorphismKind) -> Vec<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let n = s.order();
    let mut map = vec![UNSET; n];
    let mut out = Vec::new();

    fn consistent(s: &Semigroup, kind: MorphismKind, map: &[usize]) -> bool {
        let n = s.order();
        for x in 0..n {
            if map[x] == usize::MAX {
                continue;
            }
            for y in 0..n {
                if map[y] == usize::MAX || map[s.mul(x, y)] == usize::MAX {
                    continue;
                }
                if !law_holds(s, kind, map, x, y) {
                    return false;
                }
            }
        }
        true
    }

    fn go(s: &Semigroup, kind: MorphismKind, map: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = s.order();
        let Some(x) = map.iter().position(|&t| t == UNSET) else {
            out.push(map.clone());
            return;
        };
        for y in x..n {
            if map[y] != UNSET {
                continue;
            }
            map[x] = y;
            map[y] = x;
            if consistent(s, kind, map) {
                go(s, kind, map, out);
            }
            map[x] = UNSET;
            map[y] = UNSET;
        }
    }

    go(s, kind, &mut map, &mut out);
    out.sort();
    out
}
