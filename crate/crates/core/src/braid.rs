//! Braid words and the braid group action on free products of a pointed quandle.
//!
//! For a pointed quandle `(Q, h)` the generator `σ_k` acts on `Q^{*n}` by
//!
//! ```text
//! q_k     ↦ q_{k+1} \bar* h_k
//! q_{k+1} ↦ q_k * h_k
//! q_i     ↦ q_i                (i ≠ k, k+1)
//! ```
//!
//! and `σ_k^{-1}` by `q_k ↦ q_{k+1} \bar* h_{k+1}`, `q_{k+1} ↦ q_k * h_{k+1}`.
//! A word acts letter by letter from left to right: the substitution of the
//! first letter is applied to the term first.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Crossing, KnotDiagram};
use crate::error::{Error, Result};
use crate::quandle::{hom_enumerate, FiniteQuandle, HomConstraints, PointedQuandle, QuandleMorphism, Sign};

pub const DEFAULT_LETTER_CAP: usize = 64;

/// `σ_generator^sign`, with `generator` in `1..strands`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(generator: usize, sign: Sign) -> Letter {
        Letter { generator, sign }
    }

    pub fn inverse(self) -> Letter {
        Letter { generator: self.generator, sign: self.sign.flip() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<BraidWord> {
        if strands == 0 {
            return Err(Error::MalformedBraid("a braid needs at least one strand".into()));
        }
        for l in &letters {
            if l.generator == 0 || l.generator >= strands {
                return Err(Error::GeneratorOutOfRange { index: l.generator, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<BraidWord> {
        BraidWord::new(strands, Vec::new())
    }

    /// Builds a word from signed generator indices, e.g. `[1, -2, 1, -2]`.
    pub fn from_signed(strands: usize, word: &[i64]) -> Result<BraidWord> {
        let letters = word
            .iter()
            .map(|&v| Letter::new(v.unsigned_abs() as usize, if v > 0 { Sign::Pos } else { Sign::Neg }))
            .collect();
        if word.contains(&0) {
            return Err(Error::GeneratorOutOfRange { index: 0, strands });
        }
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The group inverse: letters reversed, signs flipped.
    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { left: self.strands, right: other.strands });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    /// Underlying permutation: strand at top position `i` ends at bottom position `perm[i]` (0-based).
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect(); // at[pos] = strand
        for l in &self.letters {
            at.swap(l.generator - 1, l.generator);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut count = 0;
        for start in 0..self.strands {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                p = perm[p];
            }
        }
        count
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {}", l.generator as i64 * l.sign.value())?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// `"Bn: w"` with `w` whitespace-separated signed generator indices.
    fn from_str(text: &str) -> Result<BraidWord> {
        let malformed = || Error::MalformedBraid(text.to_string());
        let (head, body) = text.trim().split_once(':').ok_or_else(malformed)?;
        let strands: usize = head.trim().strip_prefix('B').ok_or_else(malformed)?.parse().map_err(|_| malformed())?;
        let word = body
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| malformed()))
            .collect::<Result<Vec<_>>>()?;
        if strands == 0 {
            return Err(malformed());
        }
        BraidWord::from_signed(strands, &word)
    }
}

pub fn parse_braid(text: &str) -> Result<BraidWord> {
    text.parse()
}

/// Symbolic element of `Q^{*n}`. `Node(s, t, Pos)` is `s * t`, `Node(s, t, Neg)` is `s \bar* t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FreeTerm {
    Gen { copy: usize, elem: usize },
    Node(Box<FreeTerm>, Box<FreeTerm>, Sign),
}

impl FreeTerm {
    pub fn gen(copy: usize, elem: usize) -> FreeTerm {
        FreeTerm::Gen { copy, elem }
    }

    pub fn node(left: FreeTerm, right: FreeTerm, sign: Sign) -> FreeTerm {
        FreeTerm::Node(Box::new(left), Box::new(right), sign)
    }

    pub fn max_copy(&self) -> usize {
        match self {
            FreeTerm::Gen { copy, .. } => *copy,
            FreeTerm::Node(l, r, _) => l.max_copy().max(r.max_copy()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            FreeTerm::Gen { .. } => 1,
            FreeTerm::Node(l, r, _) => 1 + l.size() + r.size(),
        }
    }

    fn substitute(&self, leaf: &impl Fn(usize, usize) -> FreeTerm) -> FreeTerm {
        match self {
            FreeTerm::Gen { copy, elem } => leaf(*copy, *elem),
            FreeTerm::Node(l, r, s) => FreeTerm::node(l.substitute(leaf), r.substitute(leaf), *s),
        }
    }
}

impl fmt::Display for FreeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FreeTerm::Gen { copy, elem } => write!(f, "{elem}_{copy}"),
            FreeTerm::Node(l, r, Sign::Pos) => write!(f, "({l} * {r})"),
            FreeTerm::Node(l, r, Sign::Neg) => write!(f, "({l} /* {r})"),
        }
    }
}

/// Image of `t` under the action of `beta`.
pub fn rho_apply(beta: &BraidWord, p: &PointedQuandle, t: &FreeTerm) -> Result<FreeTerm> {
    let n = beta.strands();
    if t.max_copy() > n {
        return Err(Error::CopyOutOfRange { copy: t.max_copy(), strands: n });
    }
    let h = p.basepoint();
    let mut term = t.clone();
    for l in beta.letters() {
        let k = l.generator;
        // base copy of h used by this letter
        let hk = if l.sign == Sign::Pos { k } else { k + 1 };
        term = term.substitute(&|copy, elem| {
            if copy == k {
                FreeTerm::node(FreeTerm::gen(k + 1, elem), FreeTerm::gen(hk, h), Sign::Neg)
            } else if copy == k + 1 {
                FreeTerm::node(FreeTerm::gen(k, elem), FreeTerm::gen(hk, h), Sign::Pos)
            } else {
                FreeTerm::gen(copy, elem)
            }
        });
    }
    Ok(term)
}

/// `n` morphisms `Q -> X`, one per free factor, defining a morphism `Q^{*n} -> X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MorphismTuple(pub Vec<QuandleMorphism>);

impl MorphismTuple {
    pub fn get(&self, copy: usize) -> &QuandleMorphism {
        &self.0[copy - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn evaluate(t: &FreeTerm, fs: &MorphismTuple, x: &FiniteQuandle) -> usize {
    match t {
        FreeTerm::Gen { copy, elem } => fs.get(*copy).apply(*elem),
        FreeTerm::Node(l, r, s) => x.op_signed(evaluate(l, fs, x), evaluate(r, fs, x), *s),
    }
}

/// The tuple `q ↦ eval_fs(ρ(letter)(q_i))`, computed without building terms.
fn pull_back_letter(l: Letter, maps: &mut [Vec<usize>], h: usize, x: &FiniteQuandle) {
    let k = l.generator - 1;
    let hk = if l.sign == Sign::Pos { maps[k][h] } else { maps[k + 1][h] };
    let low: Vec<usize> = maps[k + 1].iter().map(|&v| x.inv_op(v, hk)).collect();
    let high: Vec<usize> = maps[k].iter().map(|&v| x.op(v, hk)).collect();
    maps[k] = low;
    maps[k + 1] = high;
}

/// `(eval_fs(ρ(β)(q_i)))_i` for every `q`, via the letter-wise pull-back.
///
/// Evaluating `ρ(σ_{k1}…σ_{km})(t)` under `fs` equals evaluating `t` under the
/// tuple obtained by pulling `fs` back through the letters in reverse order.
pub fn act_on_tuple(beta: &BraidWord, p: &PointedQuandle, x: &FiniteQuandle, fs: &MorphismTuple) -> MorphismTuple {
    let mut maps: Vec<Vec<usize>> = fs.0.iter().map(|f| f.map().to_vec()).collect();
    for &l in beta.letters().iter().rev() {
        pull_back_letter(l, &mut maps, p.basepoint(), x);
    }
    MorphismTuple(maps.into_iter().map(QuandleMorphism::from_validated).collect())
}

/// All tuples fixed by `beta`, i.e. the morphisms `I_β(Q, h) -> X`.
///
/// Candidates range over `Hom(Q, X)^n` in lexicographic order; the relations
/// are imposed on the generators `q_i` only.
pub fn fixed_tuples(beta: &BraidWord, p: &PointedQuandle, x: &FiniteQuandle) -> Vec<MorphismTuple> {
    let homs = hom_enumerate(&p.quandle, x, &HomConstraints::default());
    let n = beta.strands();
    let mut out = Vec::new();
    if homs.is_empty() {
        return out;
    }
    let mut idx = vec![0usize; n];
    loop {
        let fs = MorphismTuple(idx.iter().map(|&i| homs[i].clone()).collect());
        if act_on_tuple(beta, p, x, &fs) == fs {
            out.push(fs);
        }
        // odometer, last position fastest
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < homs.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// `γ^{-1} β γ`.
pub fn markov_conjugate(beta: &BraidWord, gamma: &BraidWord) -> Result<BraidWord> {
    gamma.inverse().concat(beta)?.concat(gamma)
}

/// `β σ_n^{±1}` on `n + 1` strands.
pub fn markov_stabilize(beta: &BraidWord, sign: Sign) -> BraidWord {
    let mut letters = beta.letters.clone();
    letters.push(Letter::new(beta.strands, sign));
    BraidWord { strands: beta.strands + 1, letters }
}

/// Removes a trailing `σ_{n-1}^{±1}` that is the only occurrence of `n - 1`.
pub fn markov_destabilize(beta: &BraidWord) -> Result<BraidWord> {
    let n = beta.strands;
    let last = beta.letters.last().ok_or_else(|| Error::Destabilize("empty word".into()))?;
    if last.generator != n - 1 {
        return Err(Error::Destabilize(format!("last letter is σ_{}, expected σ_{}", last.generator, n - 1)));
    }
    let occurrences = beta.letters.iter().filter(|l| l.generator == n - 1).count();
    if occurrences != 1 {
        return Err(Error::Destabilize(format!("σ_{} occurs {occurrences} times", n - 1)));
    }
    let letters = beta.letters[..beta.letters.len() - 1].to_vec();
    Ok(BraidWord { strands: n - 1, letters })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkovMove {
    Conjugate(Letter),
    Stabilize(Sign),
}

/// `moves` seeded random conjugations (by a single generator) and stabilizations.
///
/// The generator is ChaCha8 seeded with `seed`. On one strand only
/// stabilization is possible.
pub fn random_markov_moves(beta: &BraidWord, moves: usize, seed: u64) -> (BraidWord, Vec<MarkovMove>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = beta.clone();
    let mut log = Vec::with_capacity(moves);
    for _ in 0..moves {
        let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
        let conjugate = current.strands() > 1 && rng.gen_bool(0.5);
        if conjugate {
            let k = rng.gen_range(1..current.strands());
            let g = Letter::new(k, sign);
            let gamma = BraidWord { strands: current.strands(), letters: vec![g] };
            current = markov_conjugate(&current, &gamma).expect("same strand count");
            log.push(MarkovMove::Conjugate(g));
        } else {
            current = markov_stabilize(&current, sign);
            log.push(MarkovMove::Stabilize(sign));
        }
    }
    (current, log)
}

pub fn closure_diagram(beta: &BraidWord) -> Result<KnotDiagram> {
    closure_diagram_with_cap(beta, DEFAULT_LETTER_CAP)
}

/// Diagram of the braid closure, one crossing per letter (crossing `i` is letter `i`).
///
/// Strands run top to bottom. At `σ_k^{+}` the strand moving from position
/// `k + 1` to `k` passes over; at `σ_k^{-}` the strand moving from `k` to
/// `k + 1` does. Arc 0 is the arc through the top of position 1.
pub fn closure_diagram_with_cap(beta: &BraidWord, cap: usize) -> Result<KnotDiagram> {
    if beta.len() > cap {
        return Err(Error::WordTooLong { len: beta.len(), cap });
    }
    let components = beta.closure_components();
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    if beta.is_empty() {
        return KnotDiagram::new(1, 0, Vec::new(), vec![Vec::new()]);
    }
    // traversal events: (letter index, passes over?)
    let mut events: Vec<(usize, bool)> = Vec::with_capacity(2 * beta.len());
    let mut pos = 1;
    loop {
        for (i, l) in beta.letters().iter().enumerate() {
            let k = l.generator;
            if pos != k && pos != k + 1 {
                continue;
            }
            let over = match l.sign {
                Sign::Pos => pos == k + 1,
                Sign::Neg => pos == k,
            };
            events.push((i, over));
            pos = if pos == k { k + 1 } else { k };
        }
        if pos == 1 {
            break;
        }
    }
    let unders: Vec<usize> = events.iter().enumerate().filter(|(_, e)| !e.1).map(|(j, _)| j).collect();
    let m = unders.len();
    debug_assert_eq!(m, beta.len());
    // arc j ends at under event unders[j]; arc 0 wraps around the start
    let mut over_events: Vec<Vec<usize>> = vec![Vec::new(); m];
    let last = *unders.last().expect("nonempty");
    for &(letter, _) in &events[last + 1..] {
        over_events[0].push(letter);
    }
    let mut arc = 0;
    for (j, &(letter, over)) in events.iter().enumerate() {
        if j > last {
            break;
        }
        if over {
            over_events[arc].push(letter);
        } else {
            arc += 1;
        }
    }
    let mut over_arc = vec![0; beta.len()];
    for (a, evs) in over_events.iter().enumerate() {
        for &c in evs {
            over_arc[c] = a;
        }
    }
    let mut crossings: Vec<Option<Crossing>> = vec![None; beta.len()];
    for (j, &u) in unders.iter().enumerate() {
        let letter = events[u].0;
        crossings[letter] = Some(Crossing {
            sign: beta.letters()[letter].sign,
            over: over_arc[letter],
            under_in: j,
            under_out: (j + 1) % m,
        });
    }
    let crossings = crossings.into_iter().map(|c| c.expect("every letter is crossed under once")).collect();
    KnotDiagram::new(m, 0, crossings, over_events)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3() -> FiniteQuandle {
        FiniteQuandle::dihedral(3).unwrap()
    }

    #[test]
    fn parse_examples() {
        let b: BraidWord = "B2: 1 1 1".parse().unwrap();
        assert_eq!(b.strands(), 2);
        assert_eq!(b.letters(), &[Letter::new(1, Sign::Pos); 3]);
        let b: BraidWord = "B3: 1 -2 1 -2".parse().unwrap();
        assert_eq!(b.letters()[1], Letter::new(2, Sign::Neg));
        assert_eq!(b.to_string(), "B3: 1 -2 1 -2");
        assert!(matches!("B2: 2".parse::<BraidWord>(), Err(Error::GeneratorOutOfRange { index: 2, strands: 2 })));
        assert!("B2 1".parse::<BraidWord>().is_err());
        assert!("B2: x".parse::<BraidWord>().is_err());
        assert!("B2: 0".parse::<BraidWord>().is_err());
        let empty: BraidWord = "B1:".parse().unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.to_string(), "B1:");
    }

    #[test]
    fn rho_generator_images() {
        let p = PointedQuandle::new(r3(), 0).unwrap();
        let s1: BraidWord = "B2: 1".parse().unwrap();
        let img = rho_apply(&s1, &p, &FreeTerm::gen(1, 2)).unwrap();
        assert_eq!(img, FreeTerm::node(FreeTerm::gen(2, 2), FreeTerm::gen(1, 0), Sign::Neg));
        let s1: BraidWord = "B3: 1".parse().unwrap();
        assert_eq!(rho_apply(&s1, &p, &FreeTerm::gen(3, 1)).unwrap(), FreeTerm::gen(3, 1));
        let s1: BraidWord = "B2: 1".parse().unwrap();
        assert!(matches!(rho_apply(&s1, &p, &FreeTerm::gen(3, 1)), Err(Error::CopyOutOfRange { .. })));
    }

    fn all_tuples(q: &FiniteQuandle, x: &FiniteQuandle, n: usize) -> Vec<MorphismTuple> {
        let homs = hom_enumerate(q, x, &HomConstraints::default());
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t: Vec<QuandleMorphism>| {
                    homs.iter().map(move |f| {
                        let mut t = t.clone();
                        t.push(f.clone());
                        t
                    })
                })
                .collect();
        }
        out.into_iter().map(MorphismTuple).collect()
    }

    #[test]
    fn inverse_letter_cancels_extensionally() {
        let p = PointedQuandle::new(r3(), 1).unwrap();
        let x = FiniteQuandle::s4();
        let w: BraidWord = "B2: 1 -1".parse().unwrap();
        for fs in all_tuples(&p.quandle, &x, 2) {
            for copy in 1..=2 {
                for q in 0..3 {
                    let t = FreeTerm::gen(copy, q);
                    let img = rho_apply(&w, &p, &t).unwrap();
                    assert_eq!(evaluate(&img, &fs, &x), evaluate(&t, &fs, &x));
                }
            }
        }
    }

    #[test]
    fn tuple_action_agrees_with_terms() {
        let p = PointedQuandle::new(FiniteQuandle::trivial(2).unwrap(), 0).unwrap();
        let x = r3();
        let w: BraidWord = "B3: 1 -2 1 2 2 -1".parse().unwrap();
        for fs in all_tuples(&p.quandle, &x, 3).into_iter().step_by(7) {
            let acted = act_on_tuple(&w, &p, &x, &fs);
            for copy in 1..=3 {
                for q in 0..2 {
                    let img = rho_apply(&w, &p, &FreeTerm::gen(copy, q)).unwrap();
                    assert_eq!(evaluate(&img, &fs, &x), acted.get(copy).apply(q));
                }
            }
        }
    }

    #[test]
    fn trivial_one_evaluation() {
        let t1 = FiniteQuandle::trivial(1).unwrap();
        let p = PointedQuandle::new(t1.clone(), 0).unwrap();
        let x = r3();
        let s1: BraidWord = "B2: 1".parse().unwrap();
        let img = rho_apply(&s1, &p, &FreeTerm::gen(1, 0)).unwrap();
        for fs in all_tuples(&t1, &x, 2) {
            assert_eq!(evaluate(&img, &fs, &x), x.inv_op(fs.get(2).apply(0), fs.get(1).apply(0)));
        }
    }

    #[test]
    fn fixed_tuple_examples() {
        let p = PointedQuandle::new(r3(), 0).unwrap();
        let x = FiniteQuandle::dihedral(3).unwrap();
        let homs = hom_enumerate(&p.quandle, &x, &HomConstraints::default()).len();
        let unknot = BraidWord::identity(1).unwrap();
        assert_eq!(fixed_tuples(&unknot, &p, &x).len(), homs);
        let s1: BraidWord = "B2: 1".parse().unwrap();
        assert_eq!(fixed_tuples(&s1, &p, &x).len(), homs);
        let t1 = PointedQuandle::new(FiniteQuandle::trivial(1).unwrap(), 0).unwrap();
        let trefoil: BraidWord = "B2: 1 1 1".parse().unwrap();
        assert_eq!(fixed_tuples(&trefoil, &t1, &x).len(), 9);
    }

    #[test]
    fn markov_examples() {
        let b: BraidWord = "B2: 1 1 1".parse().unwrap();
        let s = markov_stabilize(&b, Sign::Pos);
        assert_eq!(s.to_string(), "B3: 1 1 1 2");
        assert_eq!(markov_destabilize(&s).unwrap(), b);
        let g: BraidWord = "B2: 1".parse().unwrap();
        assert_eq!(markov_conjugate(&b, &g).unwrap().to_string(), "B2: -1 1 1 1 1");
        assert!(markov_destabilize(&b).is_err());
        let twice: BraidWord = "B3: 2 1 2".parse().unwrap();
        assert!(markov_destabilize(&twice).is_err());
        let g3: BraidWord = "B3: 1".parse().unwrap();
        assert!(matches!(markov_conjugate(&b, &g3), Err(Error::StrandMismatch { .. })));
    }

    #[test]
    fn random_moves_are_reproducible() {
        let b: BraidWord = "B2: 1 1 1".parse().unwrap();
        let (w1, m1) = random_markov_moves(&b, 20, 7);
        let (w2, m2) = random_markov_moves(&b, 20, 7);
        assert_eq!((w1.clone(), m1), (w2, m2));
        assert_eq!(w1.closure_components(), 1);
    }

    #[test]
    fn closure_examples() {
        let d = closure_diagram(&"B2: 1 1 1".parse().unwrap()).unwrap();
        assert_eq!((d.arc_count(), d.crossings().len()), (3, 3));
        let d = closure_diagram(&BraidWord::identity(1).unwrap()).unwrap();
        assert_eq!((d.arc_count(), d.crossings().len()), (1, 0));
        let err = closure_diagram(&"B3: 1 1".parse().unwrap()).unwrap_err();
        assert_eq!(err, Error::NotAKnot { components: 3 });
        let long = BraidWord::from_signed(2, &[1; 65]).unwrap();
        assert!(matches!(closure_diagram(&long), Err(Error::WordTooLong { .. })));
        assert!(closure_diagram_with_cap(&long, 80).is_ok());
    }
}
