//! Dyck paths, their relations, Dyck tilings and the regularisation /
//! add-split sequences built from them.
//!
//! An abstract Dyck path is its content interval `[first, last]`. The cup
//! `(p, q)` of a cup diagram corresponds to the path `[p - m, q - m - 1]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    cell_height, content, cup_diagram, defect, oriented_degree_w, partition_of, weight_of, CupDiagram, Ctx,
    Partition, Weight,
};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DyckPath {
    pub first: i64,
    pub last: i64,
}

impl DyckPath {
    pub fn new(first: i64, last: i64) -> Result<DyckPath> {
        if first > last || (last - first) % 2 != 0 {
            return Err(Error::Precondition(format!("[{first},{last}] is not a Dyck path interval")));
        }
        Ok(DyckPath { first, last })
    }

    pub fn breadth(&self) -> i64 {
        (self.last - self.first) / 2 + 1
    }

    pub fn from_cup(ctx: Ctx, (p, q): (usize, usize)) -> DyckPath {
        let m = ctx.m as i64;
        DyckPath { first: p as i64 - m, last: q as i64 - m - 1 }
    }

    /// Weight positions of the endpoints of the corresponding cup.
    pub fn cup(&self, ctx: Ctx) -> Option<(usize, usize)> {
        let m = ctx.m as i64;
        let p = self.first + m;
        let q = self.last + m + 1;
        if p < 1 || q > ctx.points() as i64 {
            return None;
        }
        Some((p as usize, q as usize))
    }

    pub fn contains_content(&self, c: i64) -> bool {
        self.first <= c && c <= self.last
    }

    /// `other ≺ self`: strictly nested on both sides.
    pub fn covers(&self, other: &DyckPath) -> bool {
        self.first < other.first && other.last < self.last
    }

    /// The multiset union of the contents is an interval.
    pub fn is_adjacent(&self, other: &DyckPath) -> bool {
        self.last + 1 == other.first || other.last + 1 == self.first
    }

    pub fn is_distant(&self, other: &DyckPath) -> bool {
        self.last + 2 <= other.first || other.last + 2 <= self.first
    }

    /// `self` contains every content of `other`.
    pub fn encloses(&self, other: &DyckPath) -> bool {
        self.first <= other.first && other.last <= self.last
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.first, self.last)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equal,
    Adjacent,
    Distant,
    Covers,
    Covered,
    Overlapping,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relationship {
    pub kind: Relation,
    /// `last(P) < first(Q)`.
    pub dominated: bool,
}

pub fn relate(p: &DyckPath, q: &DyckPath) -> Relationship {
    let kind = if p == q {
        Relation::Equal
    } else if p.is_adjacent(q) {
        Relation::Adjacent
    } else if p.is_distant(q) {
        Relation::Distant
    } else if p.covers(q) {
        Relation::Covers
    } else if q.covers(p) {
        Relation::Covered
    } else {
        Relation::Overlapping
    };
    Relationship { kind, dominated: p.last < q.first }
}

// ---------------------------------------------------------------------------
// Weight-level primitives

pub fn removable_w(ctx: Ctx, w: &Weight) -> Vec<DyckPath> {
    cup_diagram(w).cups.iter().map(|&c| DyckPath::from_cup(ctx, c)).collect()
}

/// Removes `P` if it is a cup of `w`'s cup diagram.
pub fn remove_w(ctx: Ctx, w: &Weight, path: &DyckPath) -> Option<Weight> {
    let (p, q) = path.cup(ctx)?;
    if !(w.is_down(p) && w.is_up(q)) || !cup_diagram(w).has_cup(p, q) {
        return None;
    }
    Some(w.flipped(p).flipped(q))
}

/// Adds `P` if the result has `P` as a cup.
pub fn add_w(ctx: Ctx, w: &Weight, path: &DyckPath) -> Option<Weight> {
    let (p, q) = path.cup(ctx)?;
    if !(w.is_up(p) && w.is_down(q)) {
        return None;
    }
    let v = w.flipped(p).flipped(q);
    cup_diagram(&v).has_cup(p, q).then_some(v)
}

/// `ht^w(P)` for a cup of `w`.
pub fn removable_height_w(ctx: Ctx, w: &Weight, path: &DyckPath) -> i64 {
    w.height_at((path.first + ctx.m as i64) as usize)
}

/// Addable paths with their heights `ht^{λ+P}(P)`.
pub fn addable_w(ctx: Ctx, w: &Weight) -> Vec<(DyckPath, i64)> {
    let mut out = Vec::new();
    let len = ctx.points();
    for p in 1..=len {
        if !w.is_up(p) {
            continue;
        }
        for q in (p + 1..=len).step_by(2) {
            if !w.is_down(q) {
                continue;
            }
            let path = DyckPath::from_cup(ctx, (p, q));
            if let Some(v) = add_w(ctx, w, &path) {
                out.push((path, v.height_at(p)));
            }
        }
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Anchored paths and partition-level sets

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnchoredPath {
    pub path: DyckPath,
    /// Cells ordered by increasing content.
    pub tiles: Vec<(usize, usize)>,
}

impl AnchoredPath {
    fn from_skew(ctx: Ctx, path: DyckPath, big: &Partition, small: &Partition) -> AnchoredPath {
        let mut tiles = big.skew_cells(small);
        tiles.sort_by_key(|&c| content(c));
        debug_assert_eq!(tiles.len() as i64, path.last - path.first + 1);
        let _ = ctx;
        AnchoredPath { path, tiles }
    }

    pub fn heights(&self, ctx: Ctx) -> Vec<i64> {
        self.tiles.iter().map(|&c| cell_height(ctx, c)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocatedPath {
    pub anchored: AnchoredPath,
    pub height: i64,
}

pub fn removable_paths(ctx: Ctx, mu: &Partition) -> Result<BTreeMap<DyckPath, LocatedPath>> {
    mu.check(ctx)?;
    let w = weight_of(ctx, mu);
    let mut out = BTreeMap::new();
    for path in removable_w(ctx, &w) {
        let small = partition_of(ctx, &remove_w(ctx, &w, &path).expect("cup is removable"))?;
        let anchored = AnchoredPath::from_skew(ctx, path, mu, &small);
        out.insert(path, LocatedPath { anchored, height: removable_height_w(ctx, &w, &path) });
    }
    Ok(out)
}

pub fn addable_paths(ctx: Ctx, mu: &Partition) -> Result<BTreeMap<DyckPath, LocatedPath>> {
    mu.check(ctx)?;
    let w = weight_of(ctx, mu);
    let mut out = BTreeMap::new();
    for (path, height) in addable_w(ctx, &w) {
        let big = partition_of(ctx, &add_w(ctx, &w, &path).expect("addable"))?;
        let anchored = AnchoredPath::from_skew(ctx, path, &big, mu);
        out.insert(path, LocatedPath { anchored, height });
    }
    Ok(out)
}

pub fn remove_path(ctx: Ctx, mu: &Partition, path: &DyckPath) -> Result<Partition> {
    let w = weight_of(ctx, mu);
    let v = remove_w(ctx, &w, path)
        .ok_or_else(|| Error::Precondition(format!("{path} is not removable from {mu}")))?;
    partition_of(ctx, &v)
}

pub fn add_path(ctx: Ctx, mu: &Partition, path: &DyckPath) -> Result<Partition> {
    let w = weight_of(ctx, mu);
    let v =
        add_w(ctx, &w, path).ok_or_else(|| Error::Precondition(format!("{path} is not addable to {mu}")))?;
    partition_of(ctx, &v)
}

/// Smallest removable path of `w` whose interval contains both paths.
pub fn merge_w(ctx: Ctx, w: &Weight, p: &DyckPath, q: &DyckPath) -> Option<DyckPath> {
    let lo = p.first.min(q.first);
    let hi = p.last.max(q.last);
    removable_w(ctx, w)
        .into_iter()
        .filter(|x| x.first <= lo && hi <= x.last)
        .min_by_key(|x| x.breadth())
}

/// `⟨P ∪ Q⟩_μ` for adjacent `P`, `Q`.
pub fn merge(ctx: Ctx, mu: &Partition, p: &DyckPath, q: &DyckPath) -> Result<Option<DyckPath>> {
    mu.check(ctx)?;
    if !p.is_adjacent(q) {
        return Err(Error::Precondition(format!("{p} and {q} are not adjacent")));
    }
    Ok(merge_w(ctx, &weight_of(ctx, mu), p, q))
}

/// The split `Q ∖ P = Q¹ ⊔ Q²` of `Q` by a covered path `P`.
pub fn split(q: &DyckPath, p: &DyckPath) -> Result<(DyckPath, DyckPath)> {
    if !q.covers(p) {
        return Err(Error::Precondition(format!("{p} is not covered by {q}")));
    }
    Ok((DyckPath::new(q.first, p.first - 1)?, DyckPath::new(p.last + 1, q.last)?))
}

/// The maximal removable paths of `μ - P` lying inside `Q` but outside `P`.
pub fn split_pieces_w(ctx: Ctx, mu_minus_p: &Weight, q: &DyckPath, p: &DyckPath) -> Vec<DyckPath> {
    let cand: Vec<DyckPath> = removable_w(ctx, mu_minus_p)
        .into_iter()
        .filter(|x| q.encloses(x) && !p.encloses(x))
        .collect();
    cand.iter()
        .filter(|x| !cand.iter().any(|y| y != *x && y.encloses(x)))
        .copied()
        .collect()
}

pub fn commute_w(ctx: Ctx, mu: &Weight, p: &DyckPath, q: &DyckPath) -> bool {
    match (remove_w(ctx, mu, p), remove_w(ctx, mu, q)) {
        (Some(a), Some(b)) => remove_w(ctx, &a, q).is_some() && remove_w(ctx, &b, p).is_some(),
        _ => false,
    }
}

/// `rt(P)`: the maximal-breadth addable path of height one lying right of `P`.
pub fn rt_w(ctx: Ctx, lambda: &Weight, p: &DyckPath) -> Option<(DyckPath, Weight)> {
    addable_w(ctx, lambda)
        .into_iter()
        .filter(|(q, h)| *h == 1 && p.last < q.first)
        .max_by_key(|(q, _)| (q.breadth(), -q.first))
        .map(|(q, _)| (q, add_w(ctx, lambda, &q).expect("addable")))
}

pub fn rt(ctx: Ctx, lambda: &Partition, p: &DyckPath) -> Result<Option<DyckPath>> {
    let w = weight_of(ctx, lambda);
    if !removable_w(ctx, &w).contains(p) || removable_height_w(ctx, &w, p) != 0 {
        return Err(Error::Precondition(format!("{p} is not removable of height 0 from {lambda}")));
    }
    Ok(rt_w(ctx, &w, p).map(|(q, _)| q))
}

// ---------------------------------------------------------------------------
// Dyck tilings

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilingPath {
    pub path: DyckPath,
    pub cup: (usize, usize),
    pub height: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DyckTiling {
    pub base: Partition,
    pub top: Partition,
    /// Ordered by cup left endpoint.
    pub paths: Vec<TilingPath>,
}

impl DyckTiling {
    pub fn degree(&self) -> usize {
        self.paths.len()
    }

    pub fn height_of(&self, p: &DyckPath) -> Option<i64> {
        self.paths.iter().find(|t| t.path == *p).map(|t| t.height)
    }
}

enum Crossed {
    Arc((usize, usize), bool),
    Ray,
}

/// Arcs crossed by the vertical line below the clockwise cup `(p, q)`,
/// innermost first.
fn crossing_sequence(cd: &CupDiagram, lam: &Weight, mu: &Weight, (p, q): (usize, usize)) -> Vec<Crossed> {
    let mut enc: Vec<(usize, usize)> = cd.cups.iter().copied().filter(|&(a, b)| a < p && q < b).collect();
    enc.sort_by_key(|&(a, b)| b - a);
    let mut out: Vec<Crossed> = enc.into_iter().map(|c| Crossed::Arc(c, lam.is_up(c.0))).collect();
    let mut se: Vec<usize> = cd.se_rays.iter().copied().filter(|&v| v < p).collect();
    se.sort_unstable_by(|a, b| b.cmp(a));
    out.extend(se.into_iter().map(|_| Crossed::Ray));
    out.extend(cd.sw_rays.iter().filter(|&&v| v > q).map(|_| Crossed::Ray));
    debug_assert!(mu.len == lam.len);
    out
}

fn support_cups(cd: &CupDiagram, lam: &Weight, mu: &Weight, cup: (usize, usize)) -> Vec<(usize, usize)> {
    let mut clockwise = 1;
    let mut other = 0;
    let mut out = vec![cup];
    for c in crossing_sequence(cd, lam, mu, cup) {
        match c {
            Crossed::Arc(a, true) => {
                clockwise += 1;
                out.push(a);
            }
            _ => other += 1,
        }
        if clockwise == other {
            break;
        }
    }
    out
}

/// Clockwise cups of `μ̲λ` with their tiling heights, or `None` if not oriented.
pub fn tiling_w(ctx: Ctx, lam: &Weight, mu: &Weight) -> Option<Vec<TilingPath>> {
    let cd = cup_diagram(mu);
    oriented_degree_w(mu, lam)?;
    let mut cw: Vec<(usize, usize)> = cd.cups.iter().copied().filter(|&(p, _)| lam.is_up(p)).collect();
    // outermost first so that every support arc is already resolved
    cw.sort_by_key(|&(p, q)| std::cmp::Reverse(q - p));
    let mut heights: HashMap<(usize, usize), i64> = HashMap::new();
    for &cup in &cw {
        let supp = support_cups(&cd, lam, mu, cup);
        let mut h = mu.height_at(cup.0);
        for other in &supp[1..] {
            h = h.min(heights[other] - 1);
        }
        heights.insert(cup, h);
    }
    cw.sort_unstable();
    Some(
        cw.into_iter()
            .map(|cup| TilingPath { path: DyckPath::from_cup(ctx, cup), cup, height: heights[&cup] })
            .collect(),
    )
}

pub fn dyck_tiling(ctx: Ctx, lambda: &Partition, mu: &Partition) -> Option<DyckTiling> {
    if !lambda.fits(ctx) || !mu.fits(ctx) {
        return None;
    }
    let paths = tiling_w(ctx, &weight_of(ctx, lambda), &weight_of(ctx, mu))?;
    Some(DyckTiling { base: lambda.clone(), top: mu.clone(), paths })
}

fn clockwise_cup(ctx: Ctx, lambda: &Partition, mu: &Partition, p: &DyckPath) -> Result<(Weight, Weight, (usize, usize))> {
    let lam = weight_of(ctx, lambda);
    let muw = weight_of(ctx, mu);
    if oriented_degree_w(&muw, &lam).is_none() {
        return Err(Error::NotDyckPair(lambda.to_string(), mu.to_string()));
    }
    let cup = p
        .cup(ctx)
        .filter(|&(a, b)| cup_diagram(&muw).has_cup(a, b) && lam.is_up(a))
        .ok_or_else(|| Error::Precondition(format!("{p} is not a clockwise arc of the pair")))?;
    Ok((lam, muw, cup))
}

/// The support set of `P`, starting with `P` itself.
pub fn support_set(ctx: Ctx, lambda: &Partition, mu: &Partition, p: &DyckPath) -> Result<Vec<DyckPath>> {
    let (lam, muw, cup) = clockwise_cup(ctx, lambda, mu, p)?;
    let cd = cup_diagram(&muw);
    Ok(support_cups(&cd, &lam, &muw, cup).into_iter().map(|c| DyckPath::from_cup(ctx, c)).collect())
}

pub fn tiling_height(ctx: Ctx, lambda: &Partition, mu: &Partition, p: &DyckPath) -> Result<i64> {
    let (lam, muw, _) = clockwise_cup(ctx, lambda, mu, p)?;
    let t = tiling_w(ctx, &lam, &muw).expect("oriented");
    Ok(t.iter().find(|x| x.path == *p).expect("clockwise").height)
}

// ---------------------------------------------------------------------------
// Canonical tableaux

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Move {
    G1,
    G2,
    G3,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableauStep {
    pub from: Partition,
    pub to: Partition,
    pub path: DyckPath,
    pub height: i64,
    pub kind: Move,
}

/// Removal sequence `μ = μ_k → … → μ_0 = λ`, highest tiling height first.
pub fn canonical_tableau(ctx: Ctx, lambda: &Partition, mu: &Partition) -> Result<Vec<TableauStep>> {
    let tiling =
        dyck_tiling(ctx, lambda, mu).ok_or_else(|| Error::NotDyckPair(lambda.to_string(), mu.to_string()))?;
    let mut order: Vec<&TilingPath> = tiling.paths.iter().collect();
    order.sort_by_key(|t| (t.height, t.path.first));
    let mut cur = mu.clone();
    let mut steps = Vec::new();
    for t in order.into_iter().rev() {
        let w = weight_of(ctx, &cur);
        let next = remove_path(ctx, &cur, &t.path)?;
        let kind = if defect(ctx, &next) < defect(ctx, &cur) {
            Move::G1
        } else if removable_w(ctx, &w).iter().any(|q| q.covers(&t.path)) {
            Move::G3
        } else {
            Move::G2
        };
        steps.push(TableauStep { from: cur.clone(), to: next.clone(), path: t.path, height: t.height, kind });
        cur = next;
    }
    debug_assert_eq!(&cur, lambda);
    Ok(steps)
}

// ---------------------------------------------------------------------------
// Regularisation and the add/split plan

/// Pairs the south-west rays (from the right) with the south-east rays (from
/// the left); returns `reg(α)` and the paths innermost first.
pub fn regularise_w(ctx: Ctx, w: &Weight) -> (Weight, Vec<DyckPath>) {
    let cd = cup_diagram(w);
    let mut v = *w;
    let mut paths = Vec::new();
    for (&s, &e) in cd.sw_rays.iter().rev().zip(&cd.se_rays) {
        paths.push(DyckPath::from_cup(ctx, (s, e)));
        v = v.flipped(s).flipped(e);
    }
    (v, paths)
}

/// `reg(α)` together with `[P^{d+1}, …, P^0]`.
pub fn regularise(ctx: Ctx, alpha: &Partition) -> Result<(Partition, Vec<DyckPath>)> {
    alpha.check(ctx)?;
    let (v, paths) = regularise_w(ctx, &weight_of(ctx, alpha));
    Ok((partition_of(ctx, &v)?, paths))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Regularise,
    Split,
    Add,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanStep {
    pub kind: StepKind,
    pub height: i64,
    pub path: DyckPath,
    pub from: Weight,
    pub to: Weight,
}

/// The three-phase sequence transforming `α` into `μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Plan {
    pub steps: Vec<PlanStep>,
}

impl Plan {
    pub fn phase(&self, kind: StepKind) -> impl Iterator<Item = &PlanStep> {
        self.steps.iter().filter(move |s| s.kind == kind)
    }

    /// Paths of one phase grouped by height.
    pub fn by_height(&self, kind: StepKind) -> BTreeMap<i64, Vec<DyckPath>> {
        let mut out: BTreeMap<i64, Vec<DyckPath>> = BTreeMap::new();
        for s in self.phase(kind) {
            out.entry(s.height).or_default().push(s.path);
        }
        out
    }
}

pub fn plan_w(ctx: Ctx, alpha: &Weight, mu: &Weight) -> Option<Plan> {
    let tiling = tiling_w(ctx, alpha, mu)?;
    let (reg, ps) = regularise_w(ctx, alpha);
    let d = -(ps.len() as i64);
    let mut steps = Vec::new();
    let mut cur = *alpha;
    for (i, p) in ps.iter().enumerate() {
        let next = add_w(ctx, &cur, p)?;
        steps.push(PlanStep { kind: StepKind::Regularise, height: d + 1 + i as i64, path: *p, from: cur, to: next });
        cur = next;
    }
    debug_assert_eq!(cur, reg);
    for (i, p) in ps.iter().enumerate() {
        let k = d + 1 + i as i64;
        let used: Vec<&TilingPath> = tiling.iter().filter(|t| t.height == k).collect();
        let mut runs: Vec<(i64, i64)> = Vec::new();
        for c in p.first..=p.last {
            if used.iter().any(|t| t.path.contains_content(c)) {
                continue;
            }
            match runs.last_mut() {
                Some(r) if r.1 == c - 1 => r.1 = c,
                _ => runs.push((c, c)),
            }
        }
        for (a, b) in runs {
            let r = DyckPath::new(a, b).ok()?;
            let next = remove_w(ctx, &cur, &r)?;
            steps.push(PlanStep { kind: StepKind::Split, height: k, path: r, from: cur, to: next });
            cur = next;
        }
    }
    let mut pos: Vec<&TilingPath> = tiling.iter().filter(|t| t.height > 0).collect();
    pos.sort_by_key(|t| (t.height, t.path.first));
    for t in pos {
        let next = add_w(ctx, &cur, &t.path)?;
        steps.push(PlanStep { kind: StepKind::Add, height: t.height, path: t.path, from: cur, to: next });
        cur = next;
    }
    (cur == *mu).then_some(Plan { steps })
}

pub fn canonical_add_split(ctx: Ctx, alpha: &Partition, mu: &Partition) -> Result<Plan> {
    alpha.check(ctx)?;
    mu.check(ctx)?;
    let not_pair = || Error::NotDyckPair(alpha.to_string(), mu.to_string());
    plan_w(ctx, &weight_of(ctx, alpha), &weight_of(ctx, mu)).ok_or_else(not_pair)
}

/// Degree of the pair `(μ, reg(α))` for regular `μ` whose tiling over `α`
/// has only non-positive heights; checks it equals `deg(α, μ) + d(α)`.
pub fn regularize_pair_degree(ctx: Ctx, alpha: &Partition, mu: &Partition) -> Result<i64> {
    let tiling = dyck_tiling(ctx, alpha, mu).ok_or_else(|| Error::NotDyckPair(alpha.to_string(), mu.to_string()))?;
    let muw = weight_of(ctx, mu);
    if cup_diagram(&muw).cups.len() != ctx.m {
        return Err(Error::Precondition(format!("{mu} is not regular")));
    }
    if tiling.paths.iter().any(|t| t.height > 0) {
        return Err(Error::Precondition("tiling has a path of positive height".into()));
    }
    let (reg, _) = regularise_w(ctx, &weight_of(ctx, alpha));
    let deg = oriented_degree_w(&reg, &muw)
        .ok_or_else(|| Error::NotDyckPair(mu.to_string(), partition_of(ctx, &reg).map(|p| p.to_string()).unwrap_or_default()))?;
    let expected = tiling.degree() as i64 + defect(ctx, alpha);
    if deg as i64 != expected {
        return Err(Error::Precondition(format!("degree {deg} differs from k + d(α) = {expected}")));
    }
    Ok(deg as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(m: usize, n: usize) -> Ctx {
        Ctx::new(m, n).unwrap()
    }
    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }
    fn dp(f: i64, l: i64) -> DyckPath {
        DyckPath::new(f, l).unwrap()
    }

    #[test]
    fn relations() {
        let r = relate(&dp(0, 0), &dp(1, 3));
        assert_eq!(r.kind, Relation::Adjacent);
        assert!(r.dominated);
        assert_eq!(relate(&dp(0, 0), &dp(2, 2)).kind, Relation::Distant);
        assert_eq!(relate(&dp(2, 2), &dp(1, 3)).kind, Relation::Covered);
        assert_eq!(relate(&dp(1, 3), &dp(2, 2)).kind, Relation::Covers);
        assert_eq!(relate(&dp(1, 3), &dp(1, 1)).kind, Relation::Overlapping);
    }

    #[test]
    fn removable_examples() {
        let r = removable_paths(ctx(5, 6), &p("5,4,2,2")).unwrap();
        let keys: Vec<DyckPath> = r.keys().copied().collect();
        assert_eq!(keys, [dp(-4, -4), dp(-2, -2), dp(1, 3), dp(2, 2)]);
        let r = removable_paths(ctx(3, 3), &p("3,2,1")).unwrap();
        assert_eq!(r.keys().copied().collect::<Vec<_>>(), [dp(-2, -2), dp(0, 0), dp(2, 2)]);
        assert!(r.values().all(|v| v.height == 0));
        assert!(removable_paths(ctx(3, 3), &p("-")).unwrap().is_empty());
    }

    #[test]
    fn addable_examples() {
        let a = addable_paths(ctx(3, 3), &p("3,2,1")).unwrap();
        let ht1: Vec<DyckPath> = a.iter().filter(|(_, v)| v.height == 1).map(|(k, _)| *k).collect();
        assert_eq!(ht1, [dp(-1, -1), dp(-1, 1), dp(1, 1)]);
        assert!(addable_paths(ctx(3, 3), &p("3,3,3")).unwrap().is_empty());
        assert_eq!(addable_paths(ctx(2, 2), &p("2,1")).unwrap()[&dp(0, 0)].height, 1);
    }

    #[test]
    fn merge_split_rt() {
        let c = ctx(2, 2);
        assert_eq!(merge(c, &p("2,2"), &dp(0, 0), &dp(1, 1)).unwrap(), Some(dp(-1, 1)));
        assert_eq!(merge(c, &p("2,2"), &dp(0, 0), &dp(-1, -1)).unwrap(), Some(dp(-1, 1)));
        assert_eq!(merge(ctx(2, 3), &p("2,1"), &dp(-1, -1), &dp(0, 0)).unwrap(), None);
        assert_eq!(split(&dp(1, 3), &dp(2, 2)).unwrap(), (dp(1, 1), dp(3, 3)));
        assert_eq!(split(&dp(-1, 1), &dp(0, 0)).unwrap(), (dp(-1, -1), dp(1, 1)));
        assert_eq!(split(&dp(-5, 7), &dp(0, 4)).unwrap(), (dp(-5, -1), dp(5, 7)));
        assert!(split(&dp(0, 0), &dp(1, 3)).is_err());
        let c = ctx(3, 3);
        let l = p("3,2,1");
        assert_eq!(rt(c, &l, &dp(-2, -2)).unwrap(), Some(dp(-1, 1)));
        assert_eq!(rt(c, &l, &dp(0, 0)).unwrap(), Some(dp(1, 1)));
        assert_eq!(rt(c, &l, &dp(2, 2)).unwrap(), None);
    }

    #[test]
    fn tiling_small() {
        let c = ctx(2, 2);
        let t = dyck_tiling(c, &p("-"), &p("2,2")).unwrap();
        assert_eq!(t.degree(), 2);
        assert_eq!(t.height_of(&dp(0, 0)), Some(-1));
        assert_eq!(t.height_of(&dp(-1, 1)), Some(0));
        assert_eq!(dyck_tiling(c, &p("2,1"), &p("2,1")).unwrap().degree(), 0);
        assert!(dyck_tiling(c, &p("2"), &p("2,2")).is_none());
    }

    #[test]
    fn tableau_small() {
        let c = ctx(2, 2);
        let steps = canonical_tableau(c, &p("-"), &p("2,2")).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!((steps[0].path, steps[0].to.clone(), steps[0].kind), (dp(-1, 1), p("1"), Move::G1));
        assert_eq!((steps[1].path, steps[1].to.clone(), steps[1].kind), (dp(0, 0), p("-"), Move::G1));
        assert!(canonical_tableau(c, &p("2,1"), &p("2,1")).unwrap().is_empty());
    }

    #[test]
    fn regularise_examples() {
        let c = ctx(8, 9);
        let alpha = Partition::from_blocks(&[(8, 1), (6, 2), (2, 2), (1, 2)]).unwrap();
        let (reg, ps) = regularise(c, &alpha).unwrap();
        assert_eq!(reg, p("8,7,7,7,5,5,4,2"));
        assert_eq!(ps, [dp(1, 1), dp(0, 4), dp(-5, 7)]);
        let steps = canonical_tableau(c, &alpha, &reg).unwrap();
        let got: Vec<(DyckPath, Move)> = steps.iter().map(|s| (s.path, s.kind)).collect();
        assert_eq!(got, [(dp(-5, 7), Move::G1), (dp(0, 4), Move::G1), (dp(1, 1), Move::G1)]);
        assert_eq!(regularise(ctx(3, 3), &p("-")).unwrap().0, p("3,3,3"));
        assert_eq!(regularise(ctx(3, 4), &p("3,2,1")).unwrap(), (p("3,2,1"), vec![]));
    }

    #[test]
    fn plan_example() {
        let c = ctx(8, 9);
        let alpha = Partition::from_blocks(&[(8, 1), (6, 2), (2, 2), (1, 2)]).unwrap();
        let mu = Partition::from_blocks(&[(8, 3), (7, 1), (6, 3), (4, 1), (2, 1)]).unwrap();
        let plan = canonical_add_split(c, &alpha, &mu).unwrap();
        let splits = plan.by_height(StepKind::Split);
        assert!(!splits.contains_key(&-2));
        assert_eq!(splits[&-1].len(), 1);
        assert_eq!(splits[&0].len(), 2);
        let adds = plan.by_height(StepKind::Add);
        assert_eq!(adds.values().map(Vec::len).sum::<usize>(), 1);
        assert_eq!(adds.keys().copied().collect::<Vec<_>>(), [1]);
    }

    #[test]
    fn pair_degree_examples() {
        let c = ctx(2, 2);
        assert_eq!(regularize_pair_degree(c, &p("-"), &p("2,2")).unwrap(), 0);
        assert_eq!(regularize_pair_degree(c, &p("2,1"), &p("2,1")).unwrap(), 0);
        assert!(regularize_pair_degree(c, &p("-"), &p("2,1")).is_err());
    }
}
