//! Knot diagrams, Wirtinger colorings and their extensions by a pointed quandle.
//!
//! Large arcs are numbered in traversal order: arc `i + 1` starts where arc
//! `i` ends, under the crossing whose `under_in` is arc `i`. Small arcs are
//! positions along an arc between consecutive over events.
//!
//! For a coloring `ρ` and a morphism `f: Q -> X` on the base arc, the
//! morphism on the next arc is
//! `[*ρ(B)]^ε ∘ [*ρ(A)]^(n_A - p_A) ∘ f_A`, where `n_A`/`p_A` count the
//! negative/positive crossings that `A` passes over and `B` is the over arc of
//! the crossing ending `A`. Going once around gives the monodromy.

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::quandle::{
    hom_enumerate, FiniteQuandle, HomConstraints, InnerAutomorphism, PointedQuandle, QuandleMorphism, Sign,
};
use crate::solve::{Relation, Solver};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub sign: Sign,
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotDiagram {
    arcs: usize,
    base: usize,
    crossings: Vec<Crossing>,
    over_events: Vec<Vec<usize>>,
    // derived
    ending: Vec<usize>,
    over_position: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossingFile {
    pub sign: i64,
    pub over: usize,
    pub under_in: usize,
    pub under_out: usize,
}

/// `{"arcs": m, "base": 0, "crossings": [...], "over_events": [[...], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiagramFile {
    pub arcs: usize,
    #[serde(default)]
    pub base: usize,
    pub crossings: Vec<CrossingFile>,
    pub over_events: Vec<Vec<usize>>,
}

impl KnotDiagram {
    pub fn new(arcs: usize, base: usize, crossings: Vec<Crossing>, over_events: Vec<Vec<usize>>) -> Result<KnotDiagram> {
        let bad = |m: String| Err(Error::InvalidDiagram(m));
        if arcs == 0 {
            return bad("a diagram needs at least one arc".into());
        }
        if crossings.is_empty() && arcs != 1 {
            return bad(format!("{arcs} arcs but no crossings"));
        }
        if !crossings.is_empty() && crossings.len() != arcs {
            return bad(format!("{arcs} arcs but {} crossings", crossings.len()));
        }
        if base >= arcs {
            return bad(format!("base arc {base} out of range"));
        }
        if over_events.len() != arcs {
            return bad(format!("over_events has {} lists, expected {arcs}", over_events.len()));
        }
        let mut ending = vec![usize::MAX; arcs];
        let mut starting = vec![usize::MAX; arcs];
        for (i, c) in crossings.iter().enumerate() {
            if c.over >= arcs || c.under_in >= arcs || c.under_out >= arcs {
                return bad(format!("crossing {i} references an arc out of range"));
            }
            if ending[c.under_in] != usize::MAX {
                return bad(format!("arc {} ends at two crossings", c.under_in));
            }
            ending[c.under_in] = i;
            if starting[c.under_out] != usize::MAX {
                return bad(format!("arc {} starts at two crossings", c.under_out));
            }
            starting[c.under_out] = i;
            if c.under_out != (c.under_in + 1) % arcs {
                return bad(format!("crossing {i} ends arc {} but starts arc {}", c.under_in, c.under_out));
            }
        }
        let mut over_position = vec![usize::MAX; crossings.len()];
        for (a, evs) in over_events.iter().enumerate() {
            for (pos, &c) in evs.iter().enumerate() {
                if c >= crossings.len() {
                    return bad(format!("over event {c} on arc {a} is not a crossing"));
                }
                if over_position[c] != usize::MAX {
                    return bad(format!("crossing {c} appears twice as an over event"));
                }
                if crossings[c].over != a {
                    return bad(format!("crossing {c} is listed on arc {a} but its over arc is {}", crossings[c].over));
                }
                over_position[c] = pos;
            }
        }
        if let Some(c) = over_position.iter().position(|&p| p == usize::MAX) {
            return bad(format!("crossing {c} has no over event"));
        }
        Ok(KnotDiagram { arcs, base, crossings, over_events, ending, over_position })
    }

    pub fn from_json(text: &str) -> Result<KnotDiagram> {
        let file: DiagramFile = serde_json::from_str(text)?;
        let crossings = file
            .crossings
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let sign = Sign::from_i64(c.sign)
                    .ok_or_else(|| Error::InvalidDiagram(format!("crossing {i} has sign {}", c.sign)))?;
                Ok(Crossing { sign, over: c.over, under_in: c.under_in, under_out: c.under_out })
            })
            .collect::<Result<Vec<_>>>()?;
        KnotDiagram::new(file.arcs, file.base, crossings, file.over_events)
    }

    pub fn to_file(&self) -> DiagramFile {
        DiagramFile {
            arcs: self.arcs,
            base: self.base,
            crossings: self
                .crossings
                .iter()
                .map(|c| CrossingFile { sign: c.sign.value(), over: c.over, under_in: c.under_in, under_out: c.under_out })
                .collect(),
            over_events: self.over_events.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("serializable")
    }

    pub fn arc_count(&self) -> usize {
        self.arcs
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn over_events(&self, arc: usize) -> &[usize] {
        &self.over_events[arc]
    }

    /// Same diagram with a different base arc.
    pub fn with_base(&self, base: usize) -> Result<KnotDiagram> {
        KnotDiagram::new(self.arcs, base, self.crossings.clone(), self.over_events.clone())
    }

    /// Crossing at which `arc` passes under and ends; `None` for the crossingless unknot.
    pub fn ending_crossing(&self, arc: usize) -> Option<usize> {
        self.ending.get(arc).copied().filter(|&c| c != usize::MAX)
    }

    /// Position of crossing `c` in its over arc's event list.
    pub fn over_position(&self, c: usize) -> usize {
        self.over_position[c]
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// `n_A - p_A` for the over events on `arc`.
    fn over_exponent(&self, arc: usize) -> i64 {
        -self.over_events[arc].iter().map(|&c| self.crossings[c].sign.value()).sum::<i64>()
    }
}

/// Arc colors satisfying `out = in *^ε over` at every crossing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(d: &KnotDiagram, x: &FiniteQuandle, colors: Vec<usize>) -> Result<Coloring> {
        if colors.len() != d.arc_count() {
            return Err(Error::MapLength { len: colors.len(), expected: d.arc_count() });
        }
        for &c in &colors {
            x.check_element(c)?;
        }
        for (i, c) in d.crossings().iter().enumerate() {
            if colors[c.under_out] != x.op_signed(colors[c.under_in], colors[c.over], c.sign) {
                return Err(Error::InvalidColoring { crossing: i });
            }
        }
        Ok(Coloring { colors })
    }

    #[inline]
    pub fn color(&self, arc: usize) -> usize {
        self.colors[arc]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn is_constant(&self) -> bool {
        self.colors.windows(2).all(|w| w[0] == w[1])
    }
}

pub fn wirtinger_colorings(d: &KnotDiagram, x: &FiniteQuandle) -> Vec<Coloring> {
    let mut solver = Solver::new(x, d.arc_count());
    for c in d.crossings() {
        solver.add_relation(Relation { out: c.under_out, left: c.under_in, right: c.over, sign: c.sign });
    }
    solver.solve().into_iter().map(|colors| Coloring { colors }).collect()
}

/// Factors of the automorphism carrying arc `arc`'s morphism to the next arc's.
fn arc_step(d: &KnotDiagram, rho: &Coloring, arc: usize) -> Vec<(usize, Sign)> {
    let mut factors = Vec::new();
    let k = d.over_exponent(arc);
    let sign = if k >= 0 { Sign::Pos } else { Sign::Neg };
    factors.extend(std::iter::repeat_n((rho.color(arc), sign), k.unsigned_abs() as usize));
    if let Some(c) = d.ending_crossing(arc) {
        let x = d.crossings()[c];
        factors.push((rho.color(x.over), x.sign));
    }
    factors
}

/// Monodromy `A_{ρ,D}`: the composite of the arc steps, once around from the base arc.
pub fn arc_monodromy(d: &KnotDiagram, rho: &Coloring, x: &FiniteQuandle) -> InnerAutomorphism {
    if d.crossings().is_empty() {
        return InnerAutomorphism::identity(x);
    }
    let m = d.arc_count();
    let factors: Vec<(usize, Sign)> = (0..m).flat_map(|i| arc_step(d, rho, (d.base() + i) % m)).collect();
    InnerAutomorphism::from_factors(x, &factors)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedColoring {
    pub rho: Coloring,
    pub f_base: QuandleMorphism,
    /// Morphism on the first small arc of each large arc.
    pub f_arc: Vec<QuandleMorphism>,
}

/// Pairs `(ρ, f)` with `f(h) = ρ(base)` and `A_{ρ,D} ∘ f = f`, ordered by `ρ` then `f`.
pub fn extended_colorings(d: &KnotDiagram, p: &PointedQuandle, x: &FiniteQuandle) -> Vec<ExtendedColoring> {
    let homs = hom_enumerate(&p.quandle, x, &HomConstraints::default());
    let h = p.basepoint();
    let m = d.arc_count();
    let mut out = Vec::new();
    for rho in wirtinger_colorings(d, x) {
        let steps: Vec<InnerAutomorphism> =
            (0..m).map(|a| InnerAutomorphism::from_factors(x, &arc_step(d, &rho, a))).collect();
        let mono = arc_monodromy(d, &rho, x);
        for f in &homs {
            if f.apply(h) != rho.color(d.base()) || f.then(&mono) != *f {
                continue;
            }
            let mut f_arc = vec![f.clone(); m];
            let mut current = f.clone();
            for i in 0..m.saturating_sub(1) {
                let a = (d.base() + i) % m;
                current = current.then(&steps[a]);
                f_arc[(a + 1) % m] = current.clone();
            }
            out.push(ExtendedColoring { rho: rho.clone(), f_base: f.clone(), f_arc });
        }
    }
    out
}

/// Colors `ρ_q` of every small arc, per large arc in traversal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallArcColorMap {
    pub q: usize,
    pub per_arc: Vec<Vec<usize>>,
}

impl SmallArcColorMap {
    pub fn first(&self, arc: usize) -> usize {
        self.per_arc[arc][0]
    }

    pub fn last(&self, arc: usize) -> usize {
        *self.per_arc[arc].last().expect("at least one small arc")
    }
}

/// Starts each arc at `f_arc[A](q)` and applies `\bar* ρ(A)` at positive and
/// `* ρ(A)` at negative over events.
pub fn small_arc_colors(d: &KnotDiagram, ec: &ExtendedColoring, x: &FiniteQuandle, q: usize) -> SmallArcColorMap {
    let per_arc = (0..d.arc_count())
        .map(|a| {
            let over = ec.rho.color(a);
            let mut color = ec.f_arc[a].apply(q);
            let mut seq = Vec::with_capacity(d.over_events(a).len() + 1);
            seq.push(color);
            for &c in d.over_events(a) {
                color = x.op_signed(color, over, d.crossings()[c].sign.flip());
                seq.push(color);
            }
            seq
        })
        .collect();
    SmallArcColorMap { q, per_arc }
}

/// The braid word of the dual knot `-K*`: reversed with all signs flipped.
pub fn reverse_mirror(beta: &BraidWord) -> BraidWord {
    beta.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::closure_diagram;

    fn diagram(word: &str) -> KnotDiagram {
        closure_diagram(&word.parse().unwrap()).unwrap()
    }

    fn brute_colorings(d: &KnotDiagram, x: &FiniteQuandle) -> usize {
        let m = d.arc_count();
        let total = x.order().pow(m as u32);
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let colors: Vec<usize> = (0..m)
                    .map(|_| {
                        let v = c % x.order();
                        c /= x.order();
                        v
                    })
                    .collect();
                Coloring::new(d, x, colors).is_ok()
            })
            .count()
    }

    #[test]
    fn coloring_counts_match_brute_force() {
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        for (word, want) in [("B2: 1 1 1", 9), ("B3: 1 -2 1 -2", 3), ("B1:", 3)] {
            let d = diagram(word);
            assert_eq!(brute_colorings(&d, &r3), want, "{word}");
            assert_eq!(wirtinger_colorings(&d, &r3).len(), want, "{word}");
        }
    }

    #[test]
    fn colorings_are_sorted_and_valid() {
        let s4 = FiniteQuandle::s4();
        let d = diagram("B3: 1 -2 1 -2");
        let cs = wirtinger_colorings(&d, &s4);
        for w in cs.windows(2) {
            assert!(w[0] < w[1]);
        }
        for c in &cs {
            Coloring::new(&d, &s4, c.colors().to_vec()).unwrap();
        }
    }

    #[test]
    fn monodromy_examples() {
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        let u = diagram("B1:");
        let c = &wirtinger_colorings(&u, &r3)[0];
        assert!(arc_monodromy(&u, c, &r3).is_identity());
        for word in ["B2: 1 1 1", "B3: 1 -2 1 -2", "B2: 1 1 1 1 1"] {
            let d = diagram(word);
            for rho in wirtinger_colorings(&d, &r3) {
                let a = arc_monodromy(&d, &rho, &r3);
                assert_eq!(a.apply(rho.color(d.base())), rho.color(d.base()));
                if rho.is_constant() {
                    assert!(a.is_identity());
                }
            }
        }
    }

    #[test]
    fn extended_examples() {
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        let s4 = FiniteQuandle::s4();
        let t1 = PointedQuandle::new(FiniteQuandle::trivial(1).unwrap(), 0).unwrap();
        let trefoil = diagram("B2: 1 1 1");
        assert_eq!(extended_colorings(&trefoil, &t1, &r3).len(), 9);
        let pr3 = PointedQuandle::new(r3.clone(), 0).unwrap();
        let unknot = diagram("B1:");
        assert_eq!(extended_colorings(&unknot, &pr3, &r3).len(), 9);
        let ecs = extended_colorings(&trefoil, &pr3, &s4);
        assert_eq!(ecs.len(), wirtinger_colorings(&trefoil, &s4).len());
        for ec in &ecs {
            assert!(ec.f_base.is_constant());
            for a in 0..trefoil.arc_count() {
                assert_eq!(ec.f_arc[a].apply(0), ec.rho.color(a));
            }
        }
    }

    #[test]
    fn small_arcs_and_relations() {
        let x = FiniteQuandle::dihedral(3).unwrap();
        let p = PointedQuandle::new(FiniteQuandle::trivial(2).unwrap(), 0).unwrap();
        let d = diagram("B3: 1 -2 1 -2");
        for ec in extended_colorings(&d, &p, &x) {
            for q in 0..2 {
                let sa = small_arc_colors(&d, &ec, &x, q);
                for (a, seq) in sa.per_arc.iter().enumerate() {
                    assert_eq!(seq.len(), d.over_events(a).len() + 1);
                    assert_eq!(seq[0], ec.f_arc[a].apply(q));
                    if q == 0 {
                        assert!(seq.iter().all(|&c| c == ec.rho.color(a)));
                    }
                }
                for c in d.crossings() {
                    let want = x.op_signed(sa.last(c.under_in), ec.rho.color(c.over), c.sign);
                    assert_eq!(sa.first(c.under_out), want);
                }
            }
        }
        let u = diagram("B1:");
        let ec = &extended_colorings(&u, &p, &x)[0];
        assert_eq!(small_arc_colors(&u, ec, &x, 1).per_arc, vec![vec![ec.f_base.apply(1)]]);
    }

    #[test]
    fn json_round_trip_and_validation() {
        let d = diagram("B3: 1 -2 1 -2");
        let back = KnotDiagram::from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
        let mut f = d.to_file();
        f.over_events[0].clear();
        let text = serde_json::to_string(&f).unwrap();
        assert!(matches!(KnotDiagram::from_json(&text), Err(Error::InvalidDiagram(_))));
        let mut f = d.to_file();
        f.crossings[0].sign = 0;
        assert!(KnotDiagram::from_json(&serde_json::to_string(&f).unwrap()).is_err());
        let mut f = d.to_file();
        f.crossings[0].under_out = f.crossings[0].under_in;
        assert!(KnotDiagram::from_json(&serde_json::to_string(&f).unwrap()).is_err());
    }

    #[test]
    fn reverse_mirror_examples() {
        let b: BraidWord = "B2: 1 1 1".parse().unwrap();
        assert_eq!(reverse_mirror(&b).to_string(), "B2: -1 -1 -1");
        let e = BraidWord::identity(1).unwrap();
        assert_eq!(reverse_mirror(&e), e);
        let f: BraidWord = "B3: 1 -2 2 2".parse().unwrap();
        assert_eq!(reverse_mirror(&reverse_mirror(&f)), f);
    }

    #[test]
    fn base_change_keeps_counts() {
        let x = FiniteQuandle::s4();
        let p = PointedQuandle::new(FiniteQuandle::trivial(2).unwrap(), 1).unwrap();
        let d = diagram("B2: 1 1 1 1 1");
        let n0 = extended_colorings(&d, &p, &x).len();
        for b in 1..d.arc_count() {
            let db = d.with_base(b).unwrap();
            assert_eq!(extended_colorings(&db, &p, &x).len(), n0);
        }
    }
}
