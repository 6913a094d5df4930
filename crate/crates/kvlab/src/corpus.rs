//! Bundled semigroups.

use kvlab_core::Semigroup;
use serde::{Deserialize, Serialize};

/// Entry names, in listing order.
pub const NAMES: &[&str] = &[
    "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "KLEIN4", "S3", "D4", "NULL2", "NULL3", "LEFTZERO2",
    "SEMILATTICE2", "Z3ZERO",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusNotes {
    pub abelian: bool,
    pub monoid: bool,
    pub identity: Option<usize>,
    pub center_size: usize,
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub semigroup: Semigroup,
    pub notes: CorpusNotes,
}

/// Looks an entry up by name, ignoring ASCII case.
pub fn entry(name: &str) -> Option<CorpusEntry> {
    let name = *NAMES.iter().find(|n| n.eq_ignore_ascii_case(name))?;
    let semigroup = Semigroup::new(name, table(name)).expect("bundled table is a semigroup");
    let identity = semigroup.find_identity();
    let notes = CorpusNotes {
        abelian: semigroup.is_abelian(),
        monoid: identity.is_some(),
        identity,
        center_size: semigroup.center().len(),
    };
    Some(CorpusEntry { name, semigroup, notes })
}

pub fn all() -> Vec<CorpusEntry> {
    NAMES.iter().map(|n| entry(n).expect("listed entry exists")).collect()
}

fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
    (0..n).map(|x| (0..n).map(|y| op(x, y)).collect()).collect()
}

fn table(name: &str) -> Vec<Vec<usize>> {
    if let Some(n) = name.strip_prefix('Z').and_then(|d| d.parse::<usize>().ok()) {
        return from_fn(n, |x, y| (x + y) % n);
    }
    match name {
        "KLEIN4" => from_fn(4, |x, y| x ^ y),
        "S3" => s3(),
        // r^k s^j is element k + 4j; s r s = r^-1
        "D4" => from_fn(8, |x, y| {
            let (a, b, c, d) = (x % 4, x / 4, y % 4, y / 4);
            let k = if b == 0 { a + c } else { a + 4 - c } % 4;
            k + 4 * ((b + d) % 2)
        }),
        "NULL2" => from_fn(2, |_, _| 0),
        "NULL3" => from_fn(3, |_, _| 0),
        "LEFTZERO2" => from_fn(2, |x, _| x),
        // ({0, 1}, min), identity 1
        "SEMILATTICE2" => from_fn(2, usize::min),
        // Z3 with an adjoined zero 3
        "Z3ZERO" => from_fn(4, |x, y| if x == 3 || y == 3 { 3 } else { (x + y) % 3 }),
        _ => unreachable!("unlisted corpus entry {name}"),
    }
}

/// Permutations of {0, 1, 2} in lexicographic order under composition
/// `(p q)(i) = p(q(i))`; 0 is the identity, 3 and 4 are the 3-cycles.
fn s3() -> Vec<Vec<usize>> {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    from_fn(6, |x, y| {
        let p = perms[x];
        let q = perms[y];
        let pq = [p[q[0]], p[q[1]], p[q[2]]];
        perms.iter().position(|r| *r == pq).expect("closed under composition")
    })
}
