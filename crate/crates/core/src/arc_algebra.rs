//! The extended arc algebra `K^m_n`, its idempotent truncation `H^m_n`, and
//! the surgery product on oriented circle diagrams.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{Catalogue, Ctx, Partition};
use crate::{Error, Result};

/// The basis diagram `λ̲μν̄`, stored as catalogue indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Diagram {
    pub bottom: u32,
    pub weight: u32,
    pub top: u32,
}

impl Diagram {
    pub fn new(bottom: usize, weight: usize, top: usize) -> Diagram {
        Diagram { bottom: bottom as u32, weight: weight as u32, top: top as u32 }
    }

    pub fn idempotent(i: usize) -> Diagram {
        Diagram::new(i, i, i)
    }

    pub fn star(self) -> Diagram {
        Diagram { bottom: self.top, weight: self.weight, top: self.bottom }
    }
}

/// Finite integer combination of basis diagrams.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element(pub BTreeMap<Diagram, i64>);

impl Element {
    pub fn zero() -> Element {
        Element::default()
    }

    pub fn basis(d: Diagram) -> Element {
        Element::term(d, 1)
    }

    pub fn term(d: Diagram, c: i64) -> Element {
        let mut e = Element::zero();
        e.add_term(d, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, d: Diagram, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.0.entry(d).or_insert(0);
        *v += c;
        if *v == 0 {
            self.0.remove(&d);
        }
    }

    pub fn add_assign(&mut self, other: &Element, scale: i64) {
        for (&d, &c) in &other.0 {
            self.add_term(d, c * scale);
        }
    }

    pub fn scaled(&self, s: i64) -> Element {
        let mut out = Element::zero();
        out.add_assign(self, s);
        out
    }

    pub fn star(&self) -> Element {
        Element(self.0.iter().map(|(d, &c)| (d.star(), c)).collect())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &i64)> {
        self.0.iter()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SurgeryOrder {
    #[default]
    LeftToRight,
    RightToLeft,
}

pub struct ArcAlgebra {
    pub cat: Catalogue,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum State {
    One,
    X,
    Line { propagating: bool, bottom_up: bool },
}

/// The stacked diagram `λ̲ ν̄ | ν̲ γ̄` during surgery. Vertex `level*N + p-1`.
struct Stack {
    n: usize,
    below: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
}

impl Stack {
    fn nbrs(&self, v: usize) -> [Option<(usize, bool)>; 2] {
        let lvl = v / self.n;
        let f = |w: Option<usize>| w.map(|w| (w, w / self.n == lvl));
        [f(self.below[v]), f(self.above[v])]
    }

    /// Vertices of the component through `v` and its free ends.
    fn component(&self, v: usize) -> (Vec<usize>, Vec<usize>) {
        let mut seen = vec![false; 2 * self.n];
        seen[v] = true;
        let mut stack = vec![v];
        let mut verts = Vec::new();
        let mut ends = Vec::new();
        while let Some(x) = stack.pop() {
            verts.push(x);
            for e in self.nbrs(x) {
                match e {
                    None => ends.push(x),
                    Some((w, _)) if !seen[w] => {
                        seen[w] = true;
                        stack.push(w);
                    }
                    _ => {}
                }
            }
        }
        verts.sort_unstable();
        (verts, ends)
    }

    fn pos(&self, v: usize) -> usize {
        v % self.n
    }

    fn leftmost(&self, verts: &[usize]) -> usize {
        *verts.iter().min_by_key(|&&v| (self.pos(v), v)).expect("nonempty")
    }

    /// Orients the component through `v` starting from label `up` at `v`.
    fn relabel(&self, lab: &mut u128, v: usize, up: bool) {
        set_bit(lab, v, up);
        let mut done = vec![false; 2 * self.n];
        done[v] = true;
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            let lx = bit(*lab, x);
            for (w, flip) in self.nbrs(x).into_iter().flatten() {
                let nv = lx ^ flip;
                if done[w] {
                    assert_eq!(bit(*lab, w), nv, "inconsistent orientation");
                    continue;
                }
                set_bit(lab, w, nv);
                done[w] = true;
                stack.push(w);
            }
        }
    }

    fn set_circle(&self, lab: &mut u128, verts: &[usize], st: State) {
        let v = self.leftmost(verts);
        self.relabel(lab, v, st == State::X);
    }

    fn state(&self, lab: u128, verts: &[usize], ends: &[usize]) -> State {
        if ends.is_empty() {
            return if bit(lab, self.leftmost(verts)) { State::X } else { State::One };
        }
        let bottom: Vec<usize> = ends.iter().copied().filter(|&x| x < self.n && self.below[x].is_none()).collect();
        let top: Vec<usize> = ends.iter().copied().filter(|&x| x >= self.n && self.above[x].is_none()).collect();
        let propagating = bottom.len() == 1 && top.len() == 1;
        State::Line { propagating, bottom_up: propagating && bit(lab, bottom[0]) }
    }
}

fn bit(lab: u128, v: usize) -> bool {
    lab >> v & 1 == 1
}

fn set_bit(lab: &mut u128, v: usize, up: bool) {
    if up {
        *lab |= 1 << v;
    } else {
        *lab &= !(1 << v);
    }
}

impl ArcAlgebra {
    pub fn new(ctx: Ctx) -> ArcAlgebra {
        ArcAlgebra { cat: Catalogue::new(ctx) }
    }

    pub fn ctx(&self) -> Ctx {
        self.cat.ctx
    }

    pub fn degree(&self, d: &Diagram) -> Option<usize> {
        let lo = self.cat.degree(d.bottom as usize, d.weight as usize)?;
        let hi = self.cat.degree(d.top as usize, d.weight as usize)?;
        Some(lo + hi)
    }

    pub fn is_valid(&self, d: &Diagram) -> bool {
        self.degree(d).is_some()
    }

    pub fn is_regular(&self, i: usize) -> bool {
        self.cat.regular[i]
    }

    /// All diagrams `λ̲μν̄` with both halves oriented, grouped by `μ`.
    pub fn basis_k(&self) -> Vec<Diagram> {
        self.basis_filtered(|_| true)
    }

    /// The sub-basis with regular `λ` and `ν`.
    pub fn basis_h(&self) -> Vec<Diagram> {
        self.basis_filtered(|i| self.cat.regular[i])
    }

    fn basis_filtered(&self, keep: impl Fn(usize) -> bool) -> Vec<Diagram> {
        let n = self.cat.len();
        let mut out = Vec::new();
        for mu in 0..n {
            let below: Vec<usize> = (0..n).filter(|&l| keep(l) && self.cat.degree(l, mu).is_some()).collect();
            for &l in &below {
                for &g in &below {
                    out.push(Diagram::new(l, mu, g));
                }
            }
        }
        out
    }

    pub fn dim_k(&self) -> usize {
        self.basis_k().len()
    }

    pub fn dim_h(&self) -> usize {
        self.basis_h().len()
    }

    pub fn idempotent(&self, i: usize) -> Element {
        Element::basis(Diagram::idempotent(i))
    }

    /// `e = Σ 1_λ` over regular `λ`.
    pub fn schur_idempotent(&self) -> Element {
        let mut e = Element::zero();
        for i in self.cat.regular_indices() {
            e.add_term(Diagram::idempotent(i), 1);
        }
        e
    }

    pub fn unit(&self) -> Element {
        let mut e = Element::zero();
        for i in 0..self.cat.len() {
            e.add_term(Diagram::idempotent(i), 1);
        }
        e
    }

    pub fn multiply(&self, a: &Diagram, b: &Diagram) -> Element {
        self.multiply_with(a, b, SurgeryOrder::LeftToRight)
    }

    pub fn multiply_with(&self, a: &Diagram, b: &Diagram, order: SurgeryOrder) -> Element {
        if a.top != b.bottom {
            return Element::zero();
        }
        let cat = &self.cat;
        let n = cat.ctx.points();
        let (lam, nu, gam) = (a.bottom as usize, a.top as usize, b.top as usize);
        let mut st = Stack { n, below: vec![None; 2 * n], above: vec![None; 2 * n] };
        for &(p, q) in &cat.cups[lam].cups {
            st.below[p - 1] = Some(q - 1);
            st.below[q - 1] = Some(p - 1);
        }
        for &(p, q) in &cat.cups[nu].cups {
            st.above[p - 1] = Some(q - 1);
            st.above[q - 1] = Some(p - 1);
            st.below[n + p - 1] = Some(n + q - 1);
            st.below[n + q - 1] = Some(n + p - 1);
        }
        for &r in cat.cups[nu].sw_rays.iter().chain(&cat.cups[nu].se_rays) {
            st.above[r - 1] = Some(n + r - 1);
            st.below[n + r - 1] = Some(r - 1);
        }
        for &(p, q) in &cat.cups[gam].cups {
            st.above[n + p - 1] = Some(n + q - 1);
            st.above[n + q - 1] = Some(n + p - 1);
        }
        let mu = cat.weights[a.weight as usize].ups as u128;
        let beta = cat.weights[b.weight as usize].ups as u128;
        let mut terms: Vec<(u128, i64)> = vec![(mu | beta << n, 1)];

        let mut pairs = cat.cups[nu].cups.clone();
        if order == SurgeryOrder::RightToLeft {
            pairs.reverse();
        }
        for (p, q) in pairs {
            let (p0, q0, p1, q1) = (p - 1, q - 1, n + p - 1, n + q - 1);
            let (ca, ea) = st.component(p0);
            let (cb, eb) = st.component(p1);
            let split = ca == cb;
            let states: Vec<(State, State)> =
                terms.iter().map(|&(lab, _)| (st.state(lab, &ca, &ea), st.state(lab, &cb, &eb))).collect();
            st.above[p0] = Some(p1);
            st.above[q0] = Some(q1);
            st.below[p1] = Some(p0);
            st.below[q1] = Some(q0);
            let mut next = Vec::with_capacity(terms.len() * 2);
            if split {
                let (c1, e1) = st.component(p0);
                let (c2, e2) = st.component(q0);
                assert_ne!(c1, c2, "surgery on a single component must split it");
                for (&(lab, c), &(s, _)) in terms.iter().zip(&states) {
                    match s {
                        State::Line { .. } => {
                            let (line_end, circ) = if !e1.is_empty() { (e1[0], &c2) } else { (e2[0], &c1) };
                            let mut l = lab;
                            st.relabel(&mut l, line_end, bit(lab, line_end));
                            st.set_circle(&mut l, circ, State::X);
                            next.push((l, c));
                        }
                        State::One => {
                            for (s1, s2) in [(State::One, State::X), (State::X, State::One)] {
                                let mut l = lab;
                                st.set_circle(&mut l, &c1, s1);
                                st.set_circle(&mut l, &c2, s2);
                                next.push((l, c));
                            }
                        }
                        State::X => {
                            let mut l = lab;
                            st.set_circle(&mut l, &c1, State::X);
                            st.set_circle(&mut l, &c2, State::X);
                            next.push((l, c));
                        }
                    }
                }
            } else {
                let (cm, em) = st.component(p0);
                for (&(lab, c), &(sa, sb)) in terms.iter().zip(&states) {
                    use State::*;
                    match (sa, sb) {
                        (One, One) => {
                            let mut l = lab;
                            st.set_circle(&mut l, &cm, One);
                            next.push((l, c));
                        }
                        (One, X) | (X, One) => {
                            let mut l = lab;
                            st.set_circle(&mut l, &cm, X);
                            next.push((l, c));
                        }
                        (X, X) | (X, Line { .. }) | (Line { .. }, X) => {}
                        (One, Line { .. }) | (Line { .. }, One) => {
                            let mut l = lab;
                            st.relabel(&mut l, em[0], bit(lab, em[0]));
                            next.push((l, c));
                        }
                        (
                            Line { propagating: pa, bottom_up: oa },
                            Line { propagating: pb, bottom_up: ob },
                        ) => {
                            if pa && pb && oa != ob {
                                assert!(
                                    bit(lab, p0) == bit(lab, p1) && bit(lab, q0) == bit(lab, q1),
                                    "line labels disagree across the surgery"
                                );
                                next.push((lab, c));
                            }
                        }
                    }
                }
            }
            terms = next;
        }

        let mask = (1u128 << n) - 1;
        let mut out = Element::zero();
        for (lab, c) in terms {
            let lo = (lab & mask) as u64;
            let hi = ((lab >> n) & mask) as u64;
            assert_eq!(lo, hi, "surgery result has mismatched levels");
            let w = crate::combinatorics::Weight { ups: lo, len: n };
            let idx = cat.index_of_weight(&w).expect("result weight is a partition");
            let d = Diagram::new(lam, idx, gam);
            assert!(self.is_valid(&d), "surgery produced a non-oriented diagram");
            out.add_term(d, c);
        }
        out
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        self.mul_with(x, y, SurgeryOrder::LeftToRight)
    }

    pub fn mul_with(&self, x: &Element, y: &Element, order: SurgeryOrder) -> Element {
        let mut out = Element::zero();
        for (a, &ca) in &x.0 {
            for (b, &cb) in &y.0 {
                if a.top == b.bottom {
                    out.add_assign(&self.multiply_with(a, b, order), ca * cb);
                }
            }
        }
        out
    }

    /// Index of a partition, checking it lies in the rectangle.
    pub fn index(&self, p: &Partition) -> Result<usize> {
        self.cat
            .index_of(p)
            .ok_or_else(|| Error::OutOfRectangle(p.to_string(), self.cat.ctx.m, self.cat.ctx.n))
    }

    /// `D^λ_μ = λ̲λμ̄` (or its dual when `λ ⊃ μ`) for partitions differing by one removable path.
    pub fn generator_d(&self, lambda: usize, mu: usize) -> Result<Element> {
        let (small, big) = if self.cat.size(lambda) < self.cat.size(mu) { (lambda, mu) } else { (mu, lambda) };
        let ctx = self.ctx();
        let bw = self.cat.weights[big];
        let ok = crate::dyck::removable_w(ctx, &bw)
            .iter()
            .any(|p| crate::dyck::remove_w(ctx, &bw, p) == Some(self.cat.weights[small]));
        if !ok {
            return Err(Error::Precondition(format!(
                "{} and {} do not differ by one removable Dyck path",
                self.cat.partitions[lambda], self.cat.partitions[mu]
            )));
        }
        Ok(Element::basis(Diagram::new(lambda, small, mu)))
    }

    /// `D^λ_μ` for a Dyck pair `(λ, μ)` as a product of single-path generators,
    /// together with a second product in a different order when one exists.
    pub fn product_of_tiling(&self, lambda: usize, mu: usize) -> Result<(Element, Option<Element>)> {
        let ctx = self.ctx();
        let lp = &self.cat.partitions[lambda];
        let mp = &self.cat.partitions[mu];
        let steps = crate::dyck::canonical_tableau(ctx, lp, mp)?;
        let mut chain: Vec<usize> = vec![mu];
        for s in &steps {
            chain.push(self.index(&s.to)?);
        }
        chain.reverse();
        let first = self.chain_product(&chain)?;
        // a second order: add the paths in increasing first content when valid
        let tiling = crate::dyck::dyck_tiling(ctx, lp, mp).expect("Dyck pair");
        let mut paths: Vec<crate::dyck::DyckPath> = tiling.paths.iter().map(|t| t.path).collect();
        let mut second = None;
        for variant in 0..2 {
            if variant == 0 {
                paths.sort_by_key(|p| (p.breadth(), p.first));
            } else {
                paths.sort_by_key(|p| (std::cmp::Reverse(p.breadth()), p.first));
            }
            let mut cur = self.cat.weights[lambda];
            let mut alt = vec![lambda];
            let mut ok = true;
            for p in &paths {
                match crate::dyck::add_w(ctx, &cur, p) {
                    Some(v) => {
                        cur = v;
                        alt.push(self.cat.index_of_weight(&v).expect("partition"));
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && alt != chain {
                second = Some(self.chain_product(&alt)?);
                break;
            }
        }
        Ok((first, second))
    }

    fn chain_product(&self, chain: &[usize]) -> Result<Element> {
        let mut x = self.idempotent(chain[0]);
        for w in chain.windows(2) {
            x = self.mul(&x, &self.generator_d(w[0], w[1])?);
        }
        Ok(x)
    }

    pub fn parse_diagram(&self, s: &str) -> Result<Diagram> {
        let parts: Vec<&str> = s.split('|').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("diagram {s:?} must look like λ|μ|ν")));
        }
        let idx = |t: &str| -> Result<usize> { self.index(&t.parse::<Partition>()?) };
        let d = Diagram::new(idx(parts[0])?, idx(parts[1])?, idx(parts[2])?);
        if !self.is_valid(&d) {
            return Err(Error::Precondition(format!("{s} is not an oriented diagram")));
        }
        Ok(d)
    }

    pub fn show(&self, d: &Diagram) -> DiagramDisplay<'_> {
        DiagramDisplay { alg: self, d: *d }
    }

    pub fn show_element(&self, x: &Element) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = x.0.iter().map(|(d, c)| format!("{c}*[{}]", self.show(d))).collect();
        terms.join(" + ")
    }
}

pub struct DiagramDisplay<'a> {
    alg: &'a ArcAlgebra,
    d: Diagram,
}

impl fmt::Display for DiagramDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.alg.cat.partitions;
        write!(f, "{}|{}|{}", p[self.d.bottom as usize], p[self.d.weight as usize], p[self.d.top as usize])
    }
}

/// Dense multiplication table over a basis, computed in parallel.
pub fn multiplication_table(alg: &ArcAlgebra, basis: &[Diagram]) -> HashMap<(usize, usize), Element> {
    use rayon::prelude::*;
    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (0..basis.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| basis[i].top == basis[j].bottom)
        .collect();
    pairs.into_par_iter().map(|(i, j)| ((i, j), alg.multiply(&basis[i], &basis[j]))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(m: usize, n: usize) -> ArcAlgebra {
        ArcAlgebra::new(Ctx::new(m, n).unwrap())
    }

    #[test]
    fn dimensions() {
        assert_eq!(alg(1, 1).dim_k(), 5);
        assert_eq!(alg(1, 1).dim_h(), 2);
        assert_eq!(alg(2, 2).dim_h(), 12);
        assert_eq!(alg(2, 3).dim_h(), 52);
    }

    #[test]
    fn idempotents() {
        let a = alg(2, 2);
        let e0 = Diagram::idempotent(0);
        let e1 = Diagram::idempotent(1);
        assert_eq!(a.multiply(&e1, &e1), Element::basis(e1));
        assert!(a.multiply(&e0, &e1).is_zero());
        let e = a.schur_idempotent();
        assert_eq!(a.mul(&e, &e), e);
        assert_eq!(e.0.len(), 2);
    }

    #[test]
    fn loop_squares_to_zero_in_h11() {
        let a = alg(1, 1);
        let one = a.index(&"1".parse().unwrap()).unwrap();
        let zero = a.index(&"-".parse().unwrap()).unwrap();
        let d = a.generator_d(one, zero).unwrap();
        let u = a.generator_d(zero, one).unwrap();
        let l = a.mul(&d, &u);
        assert_eq!(l.0.len(), 1);
        assert!(a.mul(&l, &l).is_zero());
    }

    #[test]
    fn parse_roundtrip() {
        let a = alg(2, 2);
        let d = a.parse_diagram("2,1|2,1|2,2").unwrap();
        assert_eq!(a.show(&d).to_string(), "2,1|2,1|2,2");
        assert!(a.parse_diagram("2|2,2|2,2").is_err());
    }
}
