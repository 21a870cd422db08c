//! Cocycle invariants with values in the integral group ring `Z[G]`.
//!
//! Group elements are stored additively. For a coloring the group element is
//! the sum of crossing weights; the invariant counts colorings by that sum.
//!
//! Weights at a crossing with over arc `B` and sign `ε`:
//! `ε (φ(ρ_q(a), ρ(B)) - φ(ρ_q(b), ρ(B)))`, where at a positive crossing
//! `a` is the incoming under small arc and `b` the outgoing over small arc,
//! and at a negative crossing `a` is the outgoing under small arc and `b` the
//! incoming over small arc.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{extended_colorings, small_arc_colors, wirtinger_colorings, ExtendedColoring, KnotDiagram};
use crate::error::{Error, Result};
use crate::homology::Cocycle2;
use crate::quandle::{hom_enumerate, orbit_decomposition, FiniteQuandle, HomConstraints, PointedQuandle, Sign};

/// `Z_{m_1} × ... × Z_{m_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    moduli: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn new(moduli: Vec<u64>) -> Result<FiniteAbelianGroup> {
        if moduli.contains(&0) {
            return Err(Error::InvalidGroup(format!("moduli {moduli:?} must be positive")));
        }
        Ok(FiniteAbelianGroup { moduli })
    }

    pub fn cyclic(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(vec![n]).expect("positive modulus")
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.moduli.len()]
    }

    pub fn contains(&self, g: &[u64]) -> bool {
        g.len() == self.moduli.len() && g.iter().zip(&self.moduli).all(|(a, m)| a < m)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.moduli).map(|((x, y), m)| (x + y) % m).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.moduli).map(|(x, m)| (m - x % m) % m).collect()
    }

    /// `k · a` for any integer `k`.
    pub fn scale(&self, k: i64, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (k.rem_euclid(m as i64) as u64 * x) % m)
            .collect()
    }

    fn render(&self, g: &[u64]) -> String {
        if g.iter().all(|&x| x == 0) {
            return "e".to_string();
        }
        let single = self.moduli.len() == 1;
        g.iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| {
                let var = if single { "t".to_string() } else { format!("t_{}", i + 1) };
                if x == 1 {
                    var
                } else {
                    format!("{var}^{x}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A finitely supported integer combination of group elements; zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElement {
    group: FiniteAbelianGroup,
    coeffs: BTreeMap<Vec<u64>, i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TermJson {
    elem: Vec<u64>,
    coeff: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ElementJson {
    group: Vec<u64>,
    terms: Vec<TermJson>,
}

impl GroupRingElement {
    pub fn zero(group: FiniteAbelianGroup) -> GroupRingElement {
        GroupRingElement { group, coeffs: BTreeMap::new() }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Panics if `elem` is not in the group.
    pub fn add_term(&mut self, elem: Vec<u64>, coeff: i64) {
        assert!(self.group.contains(&elem), "element {elem:?} not in group {:?}", self.group.moduli);
        let c = self.coeffs.entry(elem).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.coeffs.retain(|_, v| *v != 0);
        }
    }

    pub fn coefficient(&self, elem: &[u64]) -> i64 {
        self.coeffs.get(elem).copied().unwrap_or(0)
    }

    /// Terms sorted by element.
    pub fn terms(&self) -> impl Iterator<Item = (&[u64], i64)> {
        self.coeffs.iter().map(|(g, &c)| (g.as_slice(), c))
    }

    pub fn coefficient_sum(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &GroupRingElement) -> Result<GroupRingElement> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(self.group.moduli.clone(), other.group.moduli.clone()));
        }
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g.to_vec(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> GroupRingElement {
        let mut out = GroupRingElement::zero(self.group.clone());
        if k != 0 {
            for (g, c) in self.terms() {
                out.add_term(g.to_vec(), k * c);
            }
        }
        out
    }

    fn map_elements(&self, f: impl Fn(&[u64]) -> Vec<u64>) -> GroupRingElement {
        let mut out = GroupRingElement::zero(self.group.clone());
        for (g, c) in self.terms() {
            out.add_term(f(g), c);
        }
        out
    }

    /// `P^i`: `g ↦ g^i`.
    pub fn power_map(&self, i: i64) -> GroupRingElement {
        self.map_elements(|g| self.group.scale(i, g))
    }

    /// `g ↦ g^{-1}`.
    pub fn dual_involution(&self) -> GroupRingElement {
        self.map_elements(|g| self.group.neg(g))
    }

    fn json_repr(&self) -> ElementJson {
        ElementJson {
            group: self.group.moduli.clone(),
            terms: self.terms().map(|(g, c)| TermJson { elem: g.to_vec(), coeff: c }).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.json_repr()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<GroupRingElement> {
        let e: ElementJson = serde_json::from_str(text)?;
        let mut out = GroupRingElement::zero(FiniteAbelianGroup::new(e.group)?);
        for t in e.terms {
            if !out.group.contains(&t.elem) {
                return Err(Error::InvalidGroup(format!("element {:?} not in group", t.elem)));
            }
            out.add_term(t.elem, t.coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms().enumerate() {
            let term = format!("{}·{}", c.unsigned_abs(), self.group.render(g));
            match (i, c < 0) {
                (0, false) => write!(f, "{term}")?,
                (0, true) => write!(f, "-{term}")?,
                (_, false) => write!(f, " + {term}")?,
                (_, true) => write!(f, " - {term}")?,
            }
        }
        Ok(())
    }
}

pub fn power_map(i: i64, v: &GroupRingElement) -> GroupRingElement {
    v.power_map(i)
}

pub fn dual_involution(v: &GroupRingElement) -> GroupRingElement {
    v.dual_involution()
}

fn signed(sign: Sign, v: u64, p: u64) -> u64 {
    match sign {
        Sign::Pos => v % p,
        Sign::Neg => (p - v % p) % p,
    }
}

/// `Σ_ρ t^{Σ_x ε φ(ρ_in, ρ_over)}` over Wirtinger colorings; negative
/// crossings read the outgoing under arc.
pub fn classical_invariant(d: &KnotDiagram, x: &FiniteQuandle, phi: &Cocycle2) -> Result<GroupRingElement> {
    phi.validate(x)?;
    let p = phi.modulus;
    let mut out = GroupRingElement::zero(FiniteAbelianGroup::cyclic(p));
    for rho in wirtinger_colorings(d, x) {
        let mut g = 0;
        for c in d.crossings() {
            let under = match c.sign {
                Sign::Pos => c.under_in,
                Sign::Neg => c.under_out,
            };
            g = (g + signed(c.sign, phi.value(rho.color(under), rho.color(c.over)), p)) % p;
        }
        out.add_term(vec![g], 1);
    }
    Ok(out)
}

/// Small arc positions `(a, b)` feeding the weight at crossing `c`, as
/// `(arc, index)` pairs into the small arc color map.
fn weight_arcs(d: &KnotDiagram, c: usize) -> ((usize, usize), (usize, usize)) {
    let x = d.crossings()[c];
    let pos = d.over_position(c);
    match x.sign {
        Sign::Pos => ((x.under_in, d.over_events(x.under_in).len()), (x.over, pos + 1)),
        Sign::Neg => ((x.under_out, 0), (x.over, pos)),
    }
}

fn weight_from(d: &KnotDiagram, c: usize, ec: &ExtendedColoring, per_arc: &[Vec<usize>], phi: &Cocycle2) -> u64 {
    let p = phi.modulus;
    let x = d.crossings()[c];
    let ((aa, ai), (ba, bi)) = weight_arcs(d, c);
    let hb = ec.rho.color(x.over);
    let diff = (phi.value(per_arc[aa][ai], hb) % p + p - phi.value(per_arc[ba][bi], hb) % p) % p;
    signed(x.sign, diff, p)
}

/// `W(x, q; ρ, f)` in `Z_p` for crossing index `crossing`.
pub fn weight(
    d: &KnotDiagram,
    x: &FiniteQuandle,
    phi: &Cocycle2,
    ec: &ExtendedColoring,
    crossing: usize,
    q: usize,
) -> u64 {
    let sa = small_arc_colors(d, ec, x, q);
    weight_from(d, crossing, ec, &sa.per_arc, phi)
}

/// Per extended coloring, the exponent `Σ_x W(x, q)` for every `q ∈ Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoringExponents {
    pub coloring: ExtendedColoring,
    pub per_element: Vec<u64>,
}

impl ColoringExponents {
    pub fn total(&self, p: u64) -> u64 {
        self.per_element.iter().fold(0, |acc, v| (acc + v) % p)
    }

    pub fn restricted(&self, elems: &[usize], p: u64) -> u64 {
        elems.iter().fold(0, |acc, &q| (acc + self.per_element[q]) % p)
    }
}

pub fn coloring_exponents(
    d: &KnotDiagram,
    pq: &PointedQuandle,
    x: &FiniteQuandle,
    phi: &Cocycle2,
) -> Result<Vec<ColoringExponents>> {
    phi.validate(x)?;
    let p = phi.modulus;
    Ok(extended_colorings(d, pq, x)
        .into_iter()
        .map(|ec| {
            let per_element = pq
                .quandle
                .elements()
                .map(|q| {
                    let sa = small_arc_colors(d, &ec, x, q);
                    (0..d.crossings().len()).fold(0, |acc, c| (acc + weight_from(d, c, &ec, &sa.per_arc, phi)) % p)
                })
                .collect();
            ColoringExponents { coloring: ec, per_element }
        })
        .collect())
}

pub fn extended_invariant(
    d: &KnotDiagram,
    pq: &PointedQuandle,
    x: &FiniteQuandle,
    phi: &Cocycle2,
) -> Result<GroupRingElement> {
    let p = phi.modulus;
    let mut out = GroupRingElement::zero(FiniteAbelianGroup::cyclic(p));
    for e in coloring_exponents(d, pq, x, phi)? {
        out.add_term(vec![e.total(p)], 1);
    }
    Ok(out)
}

/// The extended sum restricted to `q` in one `h`-orbit block.
pub fn partial_invariant(
    d: &KnotDiagram,
    pq: &PointedQuandle,
    x: &FiniteQuandle,
    phi: &Cocycle2,
    orbit: &[usize],
) -> Result<GroupRingElement> {
    if !orbit_decomposition(pq).is_block(orbit) {
        return Err(Error::NotAnOrbit { elems: orbit.to_vec() });
    }
    let p = phi.modulus;
    let mut out = GroupRingElement::zero(FiniteAbelianGroup::cyclic(p));
    for e in coloring_exponents(d, pq, x, phi)? {
        out.add_term(vec![e.restricted(orbit, p)], 1);
    }
    Ok(out)
}

/// `N_i = #{f: T_m -> X | f(0) = x, |f^{-1}(x)| = i}` for `i = 1..m`,
/// checked to be the same for every `x`.
pub fn trivial_ni(m: usize, x: &FiniteQuandle, elem: usize) -> Result<Vec<u64>> {
    x.check_element(elem)?;
    let t = FiniteQuandle::trivial(m)?;
    let homs = hom_enumerate(&t, x, &HomConstraints::default());
    let counts = |target: usize| {
        let mut n = vec![0u64; m];
        for f in homs.iter().filter(|f| f.apply(0) == target) {
            let size = f.map().iter().filter(|&&v| v == target).count();
            n[size - 1] += 1;
        }
        n
    };
    let wanted = counts(elem);
    for y in x.elements() {
        let other = counts(y);
        if other != wanted {
            return Err(Error::NiDependsOnElement { x: elem, at_x: wanted, y, at_y: other });
        }
    }
    Ok(wanted)
}
