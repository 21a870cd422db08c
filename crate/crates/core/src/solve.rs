//! Backtracking search for assignments of quandle elements to variables
//! subject to relations `out = left *^sign right`.
//!
//! Morphism enumeration and arc colorings are both instances. Propagation
//! fills `out` from `(left, right)` and `left` from `(out, right)`; the
//! search branches on an unassigned variable whose value would complete a
//! relation, falling back to the lowest unassigned one.

use crate::quandle::{FiniteQuandle, Sign};

#[derive(Debug, Clone, Copy)]
pub(crate) struct Relation {
    pub out: usize,
    pub left: usize,
    pub right: usize,
    pub sign: Sign,
}

pub(crate) struct Solver<'a> {
    target: &'a FiniteQuandle,
    relations: Vec<Relation>,
    touching: Vec<Vec<usize>>,
    allowed: Vec<Vec<bool>>,
}

impl<'a> Solver<'a> {
    pub fn new(target: &'a FiniteQuandle, vars: usize) -> Solver<'a> {
        Solver {
            target,
            relations: Vec::new(),
            touching: vec![Vec::new(); vars],
            allowed: vec![vec![true; target.order()]; vars],
        }
    }

    pub fn add_relation(&mut self, r: Relation) {
        let idx = self.relations.len();
        self.relations.push(r);
        for v in [r.out, r.left, r.right] {
            if !self.touching[v].contains(&idx) {
                self.touching[v].push(idx);
            }
        }
    }

    /// Restricts `var` to the values in `values`.
    pub fn restrict(&mut self, var: usize, values: &[usize]) {
        for (x, ok) in self.allowed[var].iter_mut().enumerate() {
            *ok = *ok && values.contains(&x);
        }
    }

    /// All solutions, sorted lexicographically.
    pub fn solve(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let assignment = vec![None; self.touching.len()];
        self.search(assignment, &mut out);
        out.sort_unstable();
        out
    }

    fn search(&self, assignment: Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(var) = self.branch_variable(&assignment) else {
            out.push(assignment.into_iter().map(|v| v.expect("complete")).collect());
            return;
        };
        for value in 0..self.target.order() {
            if !self.allowed[var][value] {
                continue;
            }
            let mut next = assignment.clone();
            if self.assign(&mut next, var, value) {
                self.search(next, out);
            }
        }
    }

    fn branch_variable(&self, a: &[Option<usize>]) -> Option<usize> {
        let first = a.iter().position(Option::is_none)?;
        let unlocks = self.relations.iter().find_map(|r| {
            let waiting = a[r.right].is_none() && (a[r.left].is_some() || a[r.out].is_some());
            waiting.then_some(r.right)
        });
        Some(unlocks.unwrap_or(first))
    }

    fn assign(&self, a: &mut [Option<usize>], var: usize, value: usize) -> bool {
        let x = self.target;
        let mut stack = vec![(var, value)];
        while let Some((v, val)) = stack.pop() {
            match a[v] {
                Some(existing) if existing != val => return false,
                Some(_) => continue,
                None => {}
            }
            if !self.allowed[v][val] {
                return false;
            }
            a[v] = Some(val);
            for &ri in &self.touching[v] {
                let r = self.relations[ri];
                match (a[r.out], a[r.left], a[r.right]) {
                    (o, Some(l), Some(rt)) => {
                        let want = x.op_signed(l, rt, r.sign);
                        match o {
                            Some(o) if o != want => return false,
                            Some(_) => {}
                            None => stack.push((r.out, want)),
                        }
                    }
                    (Some(o), None, Some(rt)) => stack.push((r.left, x.op_signed(o, rt, r.sign.flip()))),
                    _ => {}
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_brute_force_on_a_small_system() {
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        // v2 = v0 * v1, v0 = v1 \bar* v2
        let rels = [
            Relation { out: 2, left: 0, right: 1, sign: Sign::Pos },
            Relation { out: 0, left: 1, right: 2, sign: Sign::Neg },
        ];
        let mut s = Solver::new(&r3, 3);
        for r in rels {
            s.add_relation(r);
        }
        let got = s.solve();
        let mut want = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let v = [a, b, c];
                    if rels.iter().all(|r| v[r.out] == r3.op_signed(v[r.left], v[r.right], r.sign)) {
                        want.push(v.to_vec());
                    }
                }
            }
        }
        assert_eq!(got, want);
    }
}
