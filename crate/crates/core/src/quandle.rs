//! Finite quandles stored as operation tables.
//!
//! Elements are `0..order`. Row `a`, column `b` of the table holds `a * b`.
//! The right-inverse table (`a \bar* b`, the unique `c` with `c * b = a`) is
//! built once during validation.
//!
//! Standard families and their encodings:
//!
//! * `trivial:n`: `a * b = a`.
//! * `dihedral:n`: `a * b = 2b - a mod n`.
//! * `alexander:n:t`: `a * b = t a + (1 - t) b mod n`, `t` a unit.
//! * `s4`: the Alexander quandle `Z_2[T]/(T^2 + T + 1)` with `x * y = T x + T^2 y`;
//!   index `i` is `c0 + c1 T` where `i = c0 + 2 c1`, so `0, 1, 2, 3` encode
//!   `0, 1, T, T + 1`.
//! * `conj-sym:k`: the conjugation quandle `x * y = y^-1 x y` on the whole
//!   symmetric group on `k` letters, permutations listed lexicographically.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solve::{Relation, Solver};

/// Exponent `±1` of a braid letter, a crossing or an inner automorphism factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuandle {
    order: usize,
    op: Vec<usize>,
    inv: Vec<usize>,
}

/// On-disk form: `{"order": n, "table": [[...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuandleFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
}

impl FiniteQuandle {
    /// Validates `table` against the three quandle axioms.
    ///
    /// Checks run in the order range, Q1, Q2, Q3 and the first failure is
    /// reported with a witness.
    pub fn from_table(table: &[Vec<usize>]) -> Result<FiniteQuandle> {
        let n = table.len();
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(Error::RaggedTable { row, len: r.len(), order: n });
            }
            for (b, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(Error::EntryOutOfRange { a: row, b, value, order: n });
                }
            }
        }
        for (a, row) in table.iter().enumerate() {
            if row[a] != a {
                return Err(Error::Idempotence { a, value: row[a] });
            }
        }
        let mut inv = vec![usize::MAX; n * n];
        for b in 0..n {
            for (a, row) in table.iter().enumerate() {
                let value = row[b];
                let slot = &mut inv[value * n + b];
                if *slot != usize::MAX {
                    return Err(Error::RightInvertibility { b, first: *slot, second: a, value });
                }
                *slot = a;
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = table[table[a][b]][c];
                    let rhs = table[table[a][c]][table[b][c]];
                    if lhs != rhs {
                        return Err(Error::Distributivity { a, b, c });
                    }
                }
            }
        }
        let op = table.iter().flatten().copied().collect();
        Ok(FiniteQuandle { order: n, op, inv })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<FiniteQuandle> {
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        FiniteQuandle::from_table(&table)
    }

    pub fn trivial(n: usize) -> Result<FiniteQuandle> {
        FiniteQuandle::from_fn(n, |a, _| a)
    }

    pub fn dihedral(n: usize) -> Result<FiniteQuandle> {
        FiniteQuandle::from_fn(n, |a, b| (2 * b + n - a) % n)
    }

    pub fn alexander(n: usize, t: usize) -> Result<FiniteQuandle> {
        if n == 0 {
            return Err(Error::EmptyTable);
        }
        let t = t % n;
        if num_integer::gcd(t, n) != 1 {
            return Err(Error::NonUnitParameter { n, t });
        }
        let s = (1 + n - t) % n;
        FiniteQuandle::from_fn(n, |a, b| (t * a + s * b) % n)
    }

    pub fn s4() -> FiniteQuandle {
        // (c0 + c1 T) T = c1 + (c0 + c1) T
        let times_t = |x: usize| {
            let (c0, c1) = (x & 1, x >> 1);
            c1 | ((c0 ^ c1) << 1)
        };
        FiniteQuandle::from_fn(4, |x, y| times_t(x) ^ times_t(times_t(y)))
            .expect("s4 table satisfies the axioms")
    }

    /// Conjugation quandle `x * y = y^-1 x y` of a group given by its
    /// multiplication table (`table[g][h] = g h`).
    pub fn conjugation(group: &[Vec<usize>]) -> Result<FiniteQuandle> {
        let g = GroupTable::new(group)?;
        FiniteQuandle::from_fn(g.order(), |x, y| g.mul(g.mul(g.inverse(y), x), y))
    }

    pub fn conjugation_symmetric(k: usize) -> Result<FiniteQuandle> {
        FiniteQuandle::conjugation(&symmetric_group_table(k))
    }

    pub fn standard(kind: &StandardQuandle) -> Result<FiniteQuandle> {
        match kind {
            StandardQuandle::Trivial(n) => FiniteQuandle::trivial(*n),
            StandardQuandle::Dihedral(n) => FiniteQuandle::dihedral(*n),
            StandardQuandle::Alexander { n, t } => FiniteQuandle::alexander(*n, *t),
            StandardQuandle::S4 => Ok(FiniteQuandle::s4()),
            StandardQuandle::Conjugation(table) => FiniteQuandle::conjugation(table),
            StandardQuandle::ConjugationSymmetric(k) => FiniteQuandle::conjugation_symmetric(*k),
        }
    }

    /// Resolves `trivial:n`, `dihedral:n`, `alexander:n:t`, `s4` and `conj-sym:k`.
    pub fn by_name(name: &str) -> Result<FiniteQuandle> {
        FiniteQuandle::standard(&StandardQuandle::parse(name)?)
    }

    pub fn from_json(text: &str) -> Result<FiniteQuandle> {
        let file: QuandleFile = serde_json::from_str(text)?;
        if file.order != file.table.len() {
            return Err(Error::RaggedTable { row: file.table.len(), len: file.table.len(), order: file.order });
        }
        FiniteQuandle::from_table(&file.table)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&QuandleFile { order: self.order, table: self.table() })
            .expect("serializable")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.op[a * self.order + b]
    }

    /// `a \bar* b`: the unique `c` with `c * b = a`.
    #[inline]
    pub fn inv_op(&self, a: usize, b: usize) -> usize {
        self.inv[a * self.order + b]
    }

    #[inline]
    pub fn op_signed(&self, a: usize, b: usize, sign: Sign) -> usize {
        match sign {
            Sign::Pos => self.op(a, b),
            Sign::Neg => self.inv_op(a, b),
        }
    }

    /// `[*b]^k (a)` for any integer `k`.
    pub fn op_power(&self, mut a: usize, b: usize, k: i64) -> usize {
        let sign = if k >= 0 { Sign::Pos } else { Sign::Neg };
        for _ in 0..k.unsigned_abs() {
            a = self.op_signed(a, b, sign);
        }
        a
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.op.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn check_element(&self, elem: usize) -> Result<()> {
        if elem < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange { elem, order: self.order })
        }
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.op(a, b) == a))
    }

    /// True iff `Inn(Q)` acts transitively.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.order];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(a) = queue.pop_front() {
            for b in 0..self.order {
                for c in [self.op(a, b), self.inv_op(a, b)] {
                    if !seen[c] {
                        seen[c] = true;
                        count += 1;
                        queue.push_back(c);
                    }
                }
            }
        }
        count == self.order
    }

    /// Orbits of the `Inn(Q)` action, each sorted, ordered by least element.
    pub fn inner_orbits(&self) -> Vec<Vec<usize>> {
        let mut block = vec![usize::MAX; self.order];
        let mut orbits = Vec::new();
        for start in 0..self.order {
            if block[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut members = vec![start];
            block[start] = id;
            let mut i = 0;
            while i < members.len() {
                let a = members[i];
                i += 1;
                for b in 0..self.order {
                    for c in [self.op(a, b), self.inv_op(a, b)] {
                        if block[c] == usize::MAX {
                            block[c] = id;
                            members.push(c);
                        }
                    }
                }
            }
            members.sort_unstable();
            orbits.push(members);
        }
        orbits
    }
}

impl fmt::Display for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.op.chunks(self.order) {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StandardQuandle {
    Trivial(usize),
    Dihedral(usize),
    Alexander { n: usize, t: usize },
    S4,
    Conjugation(Vec<Vec<usize>>),
    ConjugationSymmetric(usize),
}

impl StandardQuandle {
    pub fn parse(name: &str) -> Result<StandardQuandle> {
        let unknown = || Error::UnknownQuandle(name.to_string());
        let parts: Vec<&str> = name.trim().split(':').collect();
        let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        let kind = match parts.as_slice() {
            ["s4"] => StandardQuandle::S4,
            ["trivial", n] => StandardQuandle::Trivial(num(n)?),
            ["dihedral", n] => StandardQuandle::Dihedral(num(n)?),
            ["alexander", n, t] => StandardQuandle::Alexander { n: num(n)?, t: num(t)? },
            ["conj-sym", k] => StandardQuandle::ConjugationSymmetric(num(k)?),
            _ => return Err(unknown()),
        };
        match kind {
            StandardQuandle::Trivial(0) | StandardQuandle::Dihedral(0) | StandardQuandle::ConjugationSymmetric(0) => {
                Err(unknown())
            }
            StandardQuandle::ConjugationSymmetric(k) if k > 5 => Err(unknown()),
            k => Ok(k),
        }
    }
}

/// Built-in quandles exercised by the verification suites.
pub fn builtin_quandles() -> Vec<(String, FiniteQuandle)> {
    let mut names: Vec<String> = (3..=7).map(|n| format!("dihedral:{n}")).collect();
    names.push("s4".into());
    names.extend((1..=4).map(|n| format!("trivial:{n}")));
    names.push("alexander:5:2".into());
    names.push("conj-sym:3".into());
    names
        .into_iter()
        .map(|n| {
            let q = FiniteQuandle::by_name(&n).expect("built-in name resolves");
            (n, q)
        })
        .collect()
}

struct GroupTable {
    mul: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl GroupTable {
    fn new(table: &[Vec<usize>]) -> Result<GroupTable> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
            return Err(Error::InvalidGroup("table is not an n×n table over 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = vec![0; n];
        for g in 0..n {
            inverse[g] = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(GroupTable { mul: table.to_vec(), inverse })
    }

    fn order(&self) -> usize {
        self.mul.len()
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }
}

/// Multiplication table of the symmetric group on `k` letters.
///
/// Permutations are listed in lexicographic order of their one-line notation;
/// the product `g h` is "apply `g`, then `h`".
pub fn symmetric_group_table(k: usize) -> Vec<Vec<usize>> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        perms.push(current.clone());
        // next permutation
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| current[j] > current[i]).expect("successor exists");
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed under product");
    perms
        .iter()
        .map(|g| {
            perms
                .iter()
                .map(|h| {
                    let gh: Vec<usize> = (0..k).map(|x| h[g[x]]).collect();
                    index(&gh)
                })
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedQuandle {
    pub quandle: FiniteQuandle,
    basepoint: usize,
}

impl PointedQuandle {
    pub fn new(quandle: FiniteQuandle, basepoint: usize) -> Result<PointedQuandle> {
        quandle.check_element(basepoint)?;
        Ok(PointedQuandle { quandle, basepoint })
    }

    /// Parses `name:h`, e.g. `dihedral:3:0` or `s4:2`.
    pub fn by_name(arg: &str) -> Result<PointedQuandle> {
        let (name, h) = arg
            .rsplit_once(':')
            .ok_or_else(|| Error::UnknownQuandle(arg.to_string()))?;
        let h: usize = h.parse().map_err(|_| Error::UnknownQuandle(arg.to_string()))?;
        PointedQuandle::new(FiniteQuandle::by_name(name)?, h)
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }
}

/// A map `Q -> X` preserving the operation. The quandles are not stored;
/// the morphism is always interpreted against the pair it was validated for.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuandleMorphism {
    map: Vec<usize>,
}

impl QuandleMorphism {
    pub fn new(domain: &FiniteQuandle, codomain: &FiniteQuandle, map: Vec<usize>) -> Result<QuandleMorphism> {
        if map.len() != domain.order() {
            return Err(Error::MapLength { len: map.len(), expected: domain.order() });
        }
        for &v in &map {
            codomain.check_element(v)?;
        }
        for a in domain.elements() {
            for b in domain.elements() {
                if map[domain.op(a, b)] != codomain.op(map[a], map[b]) {
                    return Err(Error::NotAMorphism { a, b });
                }
            }
        }
        Ok(QuandleMorphism { map })
    }

    pub(crate) fn from_validated(map: Vec<usize>) -> QuandleMorphism {
        QuandleMorphism { map }
    }

    pub fn constant(domain: &FiniteQuandle, value: usize) -> QuandleMorphism {
        QuandleMorphism { map: vec![value; domain.order()] }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn is_constant(&self) -> bool {
        self.map.windows(2).all(|w| w[0] == w[1])
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &QuandleMorphism) -> QuandleMorphism {
        QuandleMorphism { map: first.map.iter().map(|&a| self.map[a]).collect() }
    }

    /// Post-composition with an automorphism of the codomain.
    pub fn then(&self, aut: &InnerAutomorphism) -> QuandleMorphism {
        QuandleMorphism { map: self.map.iter().map(|&a| aut.apply(a)).collect() }
    }
}

/// A composite of generators `[*q]^{±1}` of `Inn(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerAutomorphism {
    perm: Vec<usize>,
    word: Vec<(usize, Sign)>,
}

impl InnerAutomorphism {
    pub fn identity(x: &FiniteQuandle) -> InnerAutomorphism {
        InnerAutomorphism { perm: x.elements().collect(), word: Vec::new() }
    }

    /// `[*q]` (or its inverse `[\bar* q]`).
    pub fn generator(x: &FiniteQuandle, q: usize, sign: Sign) -> InnerAutomorphism {
        InnerAutomorphism {
            perm: x.elements().map(|a| x.op_signed(a, q, sign)).collect(),
            word: vec![(q, sign)],
        }
    }

    /// The composite of `factors`, the first factor applied first.
    pub fn from_factors(x: &FiniteQuandle, factors: &[(usize, Sign)]) -> InnerAutomorphism {
        let perm = x
            .elements()
            .map(|a| factors.iter().fold(a, |acc, &(q, s)| x.op_signed(acc, q, s)))
            .collect();
        InnerAutomorphism { perm, word: factors.to_vec() }
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.perm[a]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn word(&self) -> &[(usize, Sign)] {
        &self.word
    }

    /// `next ∘ self`: apply `self`, then `next`.
    pub fn then(&self, next: &InnerAutomorphism) -> InnerAutomorphism {
        let mut word = self.word.clone();
        word.extend_from_slice(&next.word);
        InnerAutomorphism { perm: self.perm.iter().map(|&a| next.perm[a]).collect(), word }
    }

    pub fn inverse(&self) -> InnerAutomorphism {
        let mut perm = vec![0; self.perm.len()];
        for (a, &b) in self.perm.iter().enumerate() {
            perm[b] = a;
        }
        let word = self.word.iter().rev().map(|&(q, s)| (q, s.flip())).collect();
        InnerAutomorphism { perm, word }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(a, &b)| a == b)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.perm.iter().enumerate().filter(|(a, b)| a == *b).map(|(a, _)| a).collect()
    }

    /// Re-validates the permutation against the quandle operation.
    pub fn check_automorphism(&self, x: &FiniteQuandle) -> Result<()> {
        for a in x.elements() {
            for b in x.elements() {
                if self.perm[x.op(a, b)] != x.op(self.perm[a], self.perm[b]) {
                    return Err(Error::NotAnAutomorphism { a, b });
                }
            }
        }
        Ok(())
    }
}

/// `Inn(Q)` by breadth-first closure of the generators `[*q]`.
///
/// Elements are deduplicated by permutation and carry a shortest generating
/// word. The identity comes first.
pub fn inner_group(q: &FiniteQuandle) -> Vec<InnerAutomorphism> {
    let gens: Vec<InnerAutomorphism> =
        q.elements().map(|e| InnerAutomorphism::generator(q, e, Sign::Pos)).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let id = InnerAutomorphism::identity(q);
    seen.insert(id.perm.clone());
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        let current = out[i].clone();
        i += 1;
        for g in &gens {
            let next = current.then(g);
            if seen.insert(next.perm.clone()) {
                out.push(next);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub basepoint: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn block_of(&self, elem: usize) -> Option<&[usize]> {
        self.blocks.iter().find(|b| b.contains(&elem)).map(|b| b.as_slice())
    }

    pub fn is_block(&self, elems: &[usize]) -> bool {
        let mut sorted = elems.to_vec();
        sorted.sort_unstable();
        self.blocks.contains(&sorted)
    }
}

/// `h`-orbits: cycles of `x ↦ x * h`. The block containing `h` comes first,
/// the rest in order of least element; each block is sorted.
pub fn orbit_decomposition(p: &PointedQuandle) -> OrbitPartition {
    let q = &p.quandle;
    let h = p.basepoint();
    let mut assigned = vec![false; q.order()];
    let mut blocks = Vec::new();
    for start in std::iter::once(h).chain(q.elements()) {
        if assigned[start] {
            continue;
        }
        let mut block = Vec::new();
        let mut a = start;
        while !assigned[a] {
            assigned[a] = true;
            block.push(a);
            a = q.op(a, h);
        }
        block.sort_unstable();
        blocks.push(block);
    }
    OrbitPartition { basepoint: h, blocks }
}

#[derive(Debug, Clone, Default)]
pub struct HomConstraints<'a> {
    /// `f(h) = x`.
    pub basepoint_image: Option<(usize, usize)>,
    /// `aut ∘ f = f`.
    pub fixed_by: Option<&'a InnerAutomorphism>,
}

/// All quandle morphisms `Q -> X` satisfying `constraints`, in lexicographic
/// order of the map array.
pub fn hom_enumerate(q: &FiniteQuandle, x: &FiniteQuandle, constraints: &HomConstraints<'_>) -> Vec<QuandleMorphism> {
    let mut solver = Solver::new(x, q.order());
    for a in q.elements() {
        for b in q.elements() {
            solver.add_relation(Relation { out: q.op(a, b), left: a, right: b, sign: Sign::Pos });
        }
    }
    if let Some((h, image)) = constraints.basepoint_image {
        solver.restrict(h, &[image]);
    }
    if let Some(aut) = constraints.fixed_by {
        let fixed = aut.fixed_points();
        for a in q.elements() {
            solver.restrict(a, &fixed);
        }
    }
    solver.solve().into_iter().map(QuandleMorphism::from_validated).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_perm(v: &[usize]) -> bool {
        let mut s = v.to_vec();
        s.sort_unstable();
        s.iter().enumerate().all(|(i, &x)| i == x)
    }

    #[test]
    fn standard_families_validate() {
        assert_eq!(FiniteQuandle::dihedral(3).unwrap().op(0, 1), 2);
        let s4 = FiniteQuandle::s4();
        assert_eq!(s4.op(1, 0), 2);
        let t2 = FiniteQuandle::trivial(2).unwrap();
        assert!(t2.is_trivial());
        assert!(FiniteQuandle::alexander(5, 2).is_ok());
        assert_eq!(FiniteQuandle::conjugation_symmetric(3).unwrap().order(), 6);
    }

    #[test]
    fn s4_matches_polynomial_arithmetic() {
        // (a0 + a1 T)(b0 + b1 T) with T^2 = T + 1 over Z_2
        let mul = |a: (u8, u8), b: (u8, u8)| ((a.0 & b.0) ^ (a.1 & b.1), (a.0 & b.1) ^ (a.1 & b.0) ^ (a.1 & b.1));
        let enc = |i: usize| ((i & 1) as u8, (i >> 1) as u8);
        let t = (0u8, 1u8);
        let t2 = mul(t, t);
        assert_eq!(t2, (1, 1));
        let s4 = FiniteQuandle::s4();
        for x in 0..4 {
            for y in 0..4 {
                let a = mul(t, enc(x));
                let b = mul(t2, enc(y));
                assert_eq!(enc(s4.op(x, y)), (a.0 ^ b.0, a.1 ^ b.1), "{x}*{y}");
            }
        }
    }

    #[test]
    fn distinct_axiom_failures() {
        let add = |a: usize, b: usize| (a + b) % 3;
        assert_eq!(FiniteQuandle::from_fn(3, add).unwrap_err(), Error::Idempotence { a: 1, value: 2 });
        // Q1 holds, column 0 collides.
        let t = vec![vec![0, 0, 0], vec![0, 1, 1], vec![2, 2, 2]];
        assert!(matches!(FiniteQuandle::from_table(&t), Err(Error::RightInvertibility { b: 0, .. })));
        let bad = vec![vec![0, 5], vec![1, 1]];
        assert!(matches!(FiniteQuandle::from_table(&bad), Err(Error::EntryOutOfRange { value: 5, .. })));
        assert!(matches!(FiniteQuandle::alexander(6, 2), Err(Error::NonUnitParameter { .. })));
    }

    #[test]
    fn q3_failure_is_detected() {
        // A rack-like table with Q1 and Q2 but not Q3: transposition columns on 4 points.
        let t = vec![vec![0, 0, 3, 2], vec![1, 1, 1, 1], vec![2, 3, 2, 0], vec![3, 2, 0, 3]];
        let err = FiniteQuandle::from_table(&t).unwrap_err();
        assert!(matches!(err, Error::Distributivity { .. }), "{err:?}");
    }

    #[test]
    fn inverse_op_examples() {
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        assert_eq!(r3.inv_op(0, 1), 2);
        for q in [r3, FiniteQuandle::s4(), FiniteQuandle::conjugation_symmetric(3).unwrap()] {
            for a in q.elements() {
                for b in q.elements() {
                    assert_eq!(q.inv_op(q.op(a, b), b), a);
                    assert_eq!(q.op(q.inv_op(a, b), b), a);
                }
            }
        }
        let t3 = FiniteQuandle::trivial(3).unwrap();
        assert_eq!(t3.inv_op(2, 0), 2);
    }

    #[test]
    fn hom_examples() {
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        let s4 = FiniteQuandle::s4();
        let homs = hom_enumerate(&r3, &s4, &HomConstraints::default());
        assert_eq!(homs.len(), 4);
        assert!(homs.iter().all(|f| f.is_constant()));
        let t1 = FiniteQuandle::trivial(1).unwrap();
        assert_eq!(hom_enumerate(&t1, &s4, &HomConstraints::default()).len(), 4);
        let rr = hom_enumerate(&r3, &r3, &HomConstraints::default());
        assert_eq!(rr.len(), 9);
        for a in 0..3 {
            for b in 0..3 {
                let m: Vec<usize> = (0..3).map(|x| (a * x + b) % 3).collect();
                assert!(rr.iter().any(|f| f.map() == m.as_slice()));
            }
        }
        let mut sorted = rr.clone();
        sorted.sort();
        assert_eq!(sorted, rr);
    }

    #[test]
    fn hom_constraints() {
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        let c = HomConstraints { basepoint_image: Some((0, 1)), fixed_by: None };
        let homs = hom_enumerate(&r3, &r3, &c);
        assert_eq!(homs.len(), 3);
        assert!(homs.iter().all(|f| f.apply(0) == 1));
        let aut = InnerAutomorphism::generator(&r3, 0, Sign::Pos);
        let c = HomConstraints { basepoint_image: None, fixed_by: Some(&aut) };
        let homs = hom_enumerate(&r3, &r3, &c);
        assert_eq!(homs, vec![QuandleMorphism::constant(&r3, 0)]);
    }

    #[test]
    fn inner_automorphisms() {
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        let g = InnerAutomorphism::generator(&r3, 0, Sign::Pos);
        assert_eq!(g.perm(), &[0, 2, 1]);
        assert_eq!(inner_group(&r3).len(), 6);
        let t3 = FiniteQuandle::trivial(3).unwrap();
        assert!(InnerAutomorphism::generator(&t3, 1, Sign::Pos).is_identity());
        assert_eq!(inner_group(&t3).len(), 1);
        let conj = FiniteQuandle::conjugation_symmetric(3).unwrap();
        let inn = inner_group(&conj);
        // Inn of the conjugation quandle of S3 is S3 / Z(S3) = S3.
        assert_eq!(inn.len(), 6);
        for a in &inn {
            assert!(is_perm(a.perm()));
            a.check_automorphism(&conj).unwrap();
            assert!(a.then(&a.inverse()).is_identity());
            let replay = InnerAutomorphism::from_factors(&conj, a.word());
            assert_eq!(replay.perm(), a.perm());
            for b in &inn {
                let c = a.then(b);
                assert!(inn.iter().any(|d| d.perm() == c.perm()));
            }
        }
    }

    #[test]
    fn orbits() {
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        let p = PointedQuandle::new(r3.clone(), 0).unwrap();
        assert_eq!(orbit_decomposition(&p).blocks, vec![vec![0], vec![1, 2]]);
        let p = PointedQuandle::new(r3, 1).unwrap();
        assert_eq!(orbit_decomposition(&p).blocks, vec![vec![1], vec![0, 2]]);
        let t3 = FiniteQuandle::trivial(3).unwrap();
        let p = PointedQuandle::new(t3, 2).unwrap();
        assert_eq!(orbit_decomposition(&p).blocks, vec![vec![2], vec![0], vec![1]]);
    }

    #[test]
    fn connectedness() {
        assert!(FiniteQuandle::dihedral(3).unwrap().is_connected());
        assert!(!FiniteQuandle::trivial(2).unwrap().is_connected());
        assert!(FiniteQuandle::trivial(1).unwrap().is_connected());
        assert!(FiniteQuandle::s4().is_connected());
        assert!(!FiniteQuandle::dihedral(4).unwrap().is_connected());
    }

    #[test]
    fn names_and_json() {
        let q = FiniteQuandle::by_name("alexander:5:2").unwrap();
        assert_eq!(q.op(1, 0), 2);
        let back = FiniteQuandle::from_json(&q.to_json()).unwrap();
        assert_eq!(back, q);
        assert!(FiniteQuandle::by_name("dihedral").is_err());
        let p = PointedQuandle::by_name("dihedral:3:0").unwrap();
        assert_eq!((p.quandle.order(), p.basepoint()), (3, 0));
        assert!(PointedQuandle::by_name("s4:4").is_err());
    }

    #[test]
    fn group_table_validation() {
        let not_group = vec![vec![0, 0], vec![0, 1]];
        assert!(matches!(FiniteQuandle::conjugation(&not_group), Err(Error::InvalidGroup(_))));
        let z3: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        assert!(FiniteQuandle::conjugation(&z3).unwrap().is_trivial());
    }
}
