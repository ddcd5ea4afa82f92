//! Partitions in the m×n rectangle, weights, cup diagrams and oriented
//! degrees.
//!
//! Weight positions are 1-based; position `j` sits at x-coordinate
//! `j - m - 1/2`. A partition `λ` has `∧` exactly at the positions
//! `λᵗ_i + m - i + 1` for `i = 1..m`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Ctx {
    pub m: usize,
    pub n: usize,
}

impl Ctx {
    pub fn new(m: usize, n: usize) -> Result<Ctx> {
        if m == 0 || n == 0 || m > n || m + n > 64 {
            return Err(Error::Context { m, n });
        }
        Ok(Ctx { m, n })
    }

    /// Number of weight positions.
    pub fn points(&self) -> usize {
        self.m + self.n
    }
}

impl fmt::Display for Ctx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// A partition with trailing zeros removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Partition> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Build from `(part, multiplicity)` blocks, e.g. `[(8,1),(6,2)]` = (8,6,6).
    pub fn from_blocks(blocks: &[(usize, usize)]) -> Result<Partition> {
        let parts = blocks
            .iter()
            .flat_map(|&(p, k)| std::iter::repeat_n(p, k))
            .collect();
        Partition::new(parts)
    }

    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Row `r` (1-based), zero beyond the last row.
    pub fn row(&self, r: usize) -> usize {
        self.0.get(r - 1).copied().unwrap_or(0)
    }

    pub fn fits(&self, ctx: Ctx) -> bool {
        self.0.first().is_none_or(|&p| p <= ctx.m) && self.0.len() <= ctx.n
    }

    pub fn check(&self, ctx: Ctx) -> Result<()> {
        if self.fits(ctx) {
            Ok(())
        } else {
            Err(Error::OutOfRectangle(self.to_string(), ctx.m, ctx.n))
        }
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.0.len() <= self.0.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Cells `(row, col)`, both 1-based.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &p) in self.0.iter().enumerate() {
            for c in 1..=p {
                out.push((i + 1, c));
            }
        }
        out
    }

    /// Cells of `self` not in `other`.
    pub fn skew_cells(&self, other: &Partition) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &p) in self.0.iter().enumerate() {
            for c in other.row(i + 1) + 1..=p {
                out.push((i + 1, c));
            }
        }
        out
    }

    pub fn from_cells(cells: &[(usize, usize)]) -> Result<Partition> {
        let rows = cells.iter().map(|c| c.0).max().unwrap_or(0);
        let mut parts = vec![0; rows];
        for &(r, _) in cells {
            parts[r - 1] += 1;
        }
        let p = Partition::new(parts)?;
        let mut got = p.cells();
        let mut want = cells.to_vec();
        got.sort_unstable();
        want.sort_unstable();
        if got != want {
            return Err(Error::Parse("cell set is not a Young diagram".into()));
        }
        Ok(p)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Partition> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() || s == "-" || s == "∅" {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad part {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Box content `r - c` of cell `(r, c)`.
pub fn content(cell: (usize, usize)) -> i64 {
    cell.0 as i64 - cell.1 as i64
}

/// Box height `r + c - 1 - m`.
pub fn cell_height(ctx: Ctx, cell: (usize, usize)) -> i64 {
    (cell.0 + cell.1) as i64 - 1 - ctx.m as i64
}

pub fn enumerate_partitions(ctx: Ctx) -> Vec<Partition> {
    fn rec(ctx: Ctx, prefix: &mut Vec<usize>, max: usize, out: &mut Vec<Partition>) {
        out.push(Partition(prefix.clone()));
        if prefix.len() == ctx.n {
            return;
        }
        for p in 1..=max {
            prefix.push(p);
            rec(ctx, prefix, p, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(ctx, &mut Vec::new(), ctx.m, &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.0.cmp(&a.0)));
    out
}

pub fn conjugate(lambda: &Partition) -> Partition {
    let first = lambda.0.first().copied().unwrap_or(0);
    Partition((1..=first).map(|i| lambda.0.iter().filter(|&&p| p >= i).count()).collect())
}

/// `d - m` where `(d, d-1, ..., 1)` is the largest staircase inside `λ`.
pub fn defect(ctx: Ctx, lambda: &Partition) -> i64 {
    let mut d = 0;
    for k in 1..=ctx.m {
        if (1..=k).all(|i| lambda.row(i) > k - i) {
            d = k;
        }
    }
    d as i64 - ctx.m as i64
}

/// Labels on `len` positions; bit `j-1` set means `∧` at position `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub ups: u64,
    pub len: usize,
}

impl Weight {
    pub fn is_up(&self, j: usize) -> bool {
        self.ups >> (j - 1) & 1 == 1
    }

    pub fn is_down(&self, j: usize) -> bool {
        !self.is_up(j)
    }

    pub fn flipped(&self, j: usize) -> Weight {
        Weight { ups: self.ups ^ (1 << (j - 1)), len: self.len }
    }

    pub fn count_up(&self) -> usize {
        self.ups.count_ones() as usize
    }

    /// `#∨ - #∧` strictly left of position `p`.
    pub fn height_at(&self, p: usize) -> i64 {
        let below = (p - 1) as i64;
        let ups = (self.ups & ((1u64 << (p - 1)) - 1)).count_ones() as i64;
        below - 2 * ups
    }

    pub fn from_labels(s: &str) -> Result<Weight> {
        let mut ups = 0u64;
        let mut len = 0;
        for ch in s.chars() {
            match ch {
                '∧' | '^' => ups |= 1 << len,
                '∨' | 'v' => {}
                _ => return Err(Error::Parse(format!("bad weight label {ch:?}"))),
            }
            len += 1;
        }
        if len > 64 {
            return Err(Error::Parse("weight too long".into()));
        }
        Ok(Weight { ups, len })
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 1..=self.len {
            f.write_str(if self.is_up(j) { "∧" } else { "∨" })?;
        }
        Ok(())
    }
}

pub fn weight_of(ctx: Ctx, lambda: &Partition) -> Weight {
    let conj = conjugate(lambda);
    let mut ups = 0u64;
    for i in 1..=ctx.m {
        let pos = conj.row(i) + ctx.m - i + 1;
        ups |= 1 << (pos - 1);
    }
    Weight { ups, len: ctx.points() }
}

pub fn partition_of(ctx: Ctx, w: &Weight) -> Result<Partition> {
    if w.len != ctx.points() || w.count_up() != ctx.m {
        return Err(Error::Parse(format!("weight {w} does not have {} ∧ on {} points", ctx.m, ctx.points())));
    }
    let mut ups: Vec<usize> = (1..=w.len).filter(|&j| w.is_up(j)).collect();
    ups.reverse();
    let conj: Vec<usize> = (1..=ctx.m).map(|i| ups[i - 1] - (ctx.m - i + 1)).collect();
    let rows = (1..=ctx.n).map(|r| conj.iter().filter(|&&c| c >= r).count()).collect();
    Partition::new(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CupDiagram {
    /// Sorted by left endpoint.
    pub cups: Vec<(usize, usize)>,
    pub sw_rays: Vec<usize>,
    pub se_rays: Vec<usize>,
}

impl CupDiagram {
    /// Partner of each position (1-based index; 0 for ray ends).
    pub fn partners(&self, len: usize) -> Vec<usize> {
        let mut out = vec![0; len + 1];
        for &(p, q) in &self.cups {
            out[p] = q;
            out[q] = p;
        }
        out
    }

    pub fn has_cup(&self, p: usize, q: usize) -> bool {
        self.cups.binary_search_by(|c| c.0.cmp(&p)).is_ok_and(|i| self.cups[i].1 == q)
    }
}

pub fn cup_diagram(w: &Weight) -> CupDiagram {
    let mut stack = Vec::new();
    let mut cups = Vec::new();
    let mut sw_rays = Vec::new();
    for j in 1..=w.len {
        if w.is_down(j) {
            stack.push(j);
        } else if let Some(p) = stack.pop() {
            cups.push((p, j));
        } else {
            sw_rays.push(j);
        }
    }
    cups.sort_unstable();
    CupDiagram { cups, sw_rays, se_rays: stack }
}

/// Degree of the oriented diagram `μ̲λ`, or `None` when it is not oriented.
pub fn oriented_degree_w(mu: &Weight, lambda: &Weight) -> Option<usize> {
    let cd = cup_diagram(mu);
    oriented_degree_cd(&cd, mu, lambda)
}

pub(crate) fn oriented_degree_cd(cd: &CupDiagram, mu: &Weight, lambda: &Weight) -> Option<usize> {
    let mut deg = 0;
    for &(p, q) in &cd.cups {
        if lambda.is_up(p) == lambda.is_up(q) {
            return None;
        }
        if lambda.is_up(p) {
            deg += 1;
        }
    }
    let diff = mu.ups ^ lambda.ups;
    let rays = cd.sw_rays.iter().chain(&cd.se_rays);
    for &r in rays {
        if diff >> (r - 1) & 1 == 1 {
            return None;
        }
    }
    Some(deg)
}

pub fn oriented_degree(ctx: Ctx, mu: &Partition, lambda: &Partition) -> Option<usize> {
    oriented_degree_w(&weight_of(ctx, mu), &weight_of(ctx, lambda))
}

/// Polynomial in `q` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPoly(pub BTreeMap<u32, i64>);

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly::default()
    }

    pub fn monomial(e: u32, c: i64) -> QPoly {
        let mut p = QPoly::zero();
        p.add_term(e, c);
        p
    }

    pub fn add_term(&mut self, e: u32, c: i64) {
        let v = self.0.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.0.remove(&e);
        }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (&e, &c) in &other.0 {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (&a, &x) in &self.0 {
            for (&b, &y) in &other.0 {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> QPoly {
        (0..k).fold(QPoly::monomial(0, 1), |acc, _| acc.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .map(|(&e, &c)| match (e, c) {
                (0, c) => c.to_string(),
                (1, 1) => "q".to_string(),
                (1, c) => format!("{c}q"),
                (e, 1) => format!("q^{e}"),
                (e, c) => format!("{c}q^{e}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

/// `q^{deg(μ̲λ)}` when `μ̲λ` is oriented, else zero.
pub fn pkl(ctx: Ctx, lambda: &Partition, mu: &Partition) -> QPoly {
    match oriented_degree(ctx, mu, lambda) {
        Some(d) => QPoly::monomial(d as u32, 1),
        None => QPoly::zero(),
    }
}

/// Everything about a context that the algebra needs by index.
#[derive(Clone, Debug)]
pub struct Catalogue {
    pub ctx: Ctx,
    pub partitions: Vec<Partition>,
    pub weights: Vec<Weight>,
    pub cups: Vec<CupDiagram>,
    pub regular: Vec<bool>,
    index: HashMap<u64, usize>,
}

impl Catalogue {
    pub fn new(ctx: Ctx) -> Catalogue {
        let partitions = enumerate_partitions(ctx);
        let weights: Vec<Weight> = partitions.iter().map(|p| weight_of(ctx, p)).collect();
        let cups: Vec<CupDiagram> = weights.iter().map(cup_diagram).collect();
        let regular = cups.iter().map(|c| c.cups.len() == ctx.m).collect();
        let index = weights.iter().enumerate().map(|(i, w)| (w.ups, i)).collect();
        Catalogue { ctx, partitions, weights, cups, regular, index }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn index_of_weight(&self, w: &Weight) -> Option<usize> {
        self.index.get(&w.ups).copied()
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        if !p.fits(self.ctx) {
            return None;
        }
        self.index_of_weight(&weight_of(self.ctx, p))
    }

    pub fn regular_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.regular[i]).collect()
    }

    /// `deg(μ̲λ)` by index.
    pub fn degree(&self, mu: usize, lambda: usize) -> Option<usize> {
        oriented_degree_cd(&self.cups[mu], &self.weights[mu], &self.weights[lambda])
    }

    pub fn size(&self, i: usize) -> usize {
        self.partitions[i].size()
    }
}
