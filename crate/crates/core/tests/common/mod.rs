//! Brute-force oracles that avoid the library's weight and cup machinery.
#![allow(dead_code)]

use std::collections::BTreeSet;

use arcalg::{Ctx, Partition};

pub fn ctx(m: usize, n: usize) -> Ctx {
    Ctx::new(m, n).unwrap()
}

pub fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

/// All contexts with `m ≤ n` and `m + n ≤ k`.
pub fn contexts(k: usize) -> Vec<Ctx> {
    let mut out = Vec::new();
    for m in 1..k {
        for n in m..=k - m {
            out.push(ctx(m, n));
        }
    }
    out
}

/// Partitions in the rectangle, by recursion on rows.
pub fn partitions(ctx: Ctx) -> Vec<Vec<usize>> {
    fn go(rows_left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if rows_left == 0 {
            return;
        }
        for x in 1..=max {
            cur.push(x);
            go(rows_left - 1, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(ctx.n, ctx.m, &mut Vec::new(), &mut out);
    out
}

pub fn row(p: &[usize], r: usize) -> usize {
    p.get(r - 1).copied().unwrap_or(0)
}

pub fn transpose(p: &[usize]) -> Vec<usize> {
    let w = p.first().copied().unwrap_or(0);
    (1..=w).map(|c| p.iter().filter(|&&x| x >= c).count()).collect()
}

/// `true` for ∧. Positions are 1-based in the returned vector's index + 1.
pub fn labels(ctx: Ctx, p: &[usize]) -> Vec<bool> {
    let t = transpose(p);
    let mut v = vec![false; ctx.m + ctx.n];
    for i in 1..=ctx.m {
        v[row(&t, i) + ctx.m - i] = true;
    }
    v
}

/// Cups by the usual bracket matching of `∨ … ∧`.
pub fn cups(labels: &[bool]) -> Vec<(usize, usize)> {
    let mut stack = Vec::new();
    let mut out = Vec::new();
    for (i, &up) in labels.iter().enumerate() {
        if !up {
            stack.push(i + 1);
        } else if let Some(p) = stack.pop() {
            out.push((p, i + 1));
        }
    }
    out.sort();
    out
}

pub fn is_regular(ctx: Ctx, p: &[usize]) -> bool {
    cups(&labels(ctx, p)).len() == ctx.m
}

/// Weights reachable from `mu` by flipping a subset of its cups, with the
/// number of flips.
pub fn flips(ctx: Ctx, mu: &[usize]) -> Vec<(Vec<bool>, usize)> {
    let l = labels(ctx, mu);
    let c = cups(&l);
    (0u32..1 << c.len())
        .map(|mask| {
            let mut w = l.clone();
            for (k, &(a, b)) in c.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    w.swap(a - 1, b - 1);
                }
            }
            (w, mask.count_ones() as usize)
        })
        .collect()
}

/// `dim H = Σ_α r(α)²`, `r(α)` = number of regular `μ` flipping down to `α`.
pub fn flip_count_dim_h(ctx: Ctx) -> usize {
    let ps = partitions(ctx);
    let mut total = 0;
    for alpha in &ps {
        let la = labels(ctx, alpha);
        let r = ps
            .iter()
            .filter(|mu| is_regular(ctx, mu))
            .filter(|mu| flips(ctx, mu).iter().any(|(w, _)| *w == la))
            .count();
        total += r * r;
    }
    total
}

pub fn cells(p: &[usize]) -> BTreeSet<(usize, usize)> {
    p.iter().enumerate().flat_map(|(r, &len)| (1..=len).map(move |c| (r + 1, c))).collect()
}

pub fn content((r, c): (usize, usize)) -> i64 {
    r as i64 - c as i64
}

pub fn height(ctx: Ctx, (r, c): (usize, usize)) -> i64 {
    (r + c) as i64 - 1 - ctx.m as i64
}

/// If `big ∖ small` is a Dyck strip, its content interval and end height.
pub fn dyck_strip(ctx: Ctx, small: &[usize], big: &[usize]) -> Option<(i64, i64, i64)> {
    let (s, b) = (cells(small), cells(big));
    if !s.is_subset(&b) {
        return None;
    }
    let mut diff: Vec<(usize, usize)> = b.difference(&s).copied().collect();
    if diff.is_empty() {
        return None;
    }
    diff.sort_by_key(|&x| content(x));
    let cs: Vec<i64> = diff.iter().map(|&x| content(x)).collect();
    if cs.windows(2).any(|w| w[1] != w[0] + 1) {
        return None;
    }
    let hs: Vec<i64> = diff.iter().map(|&x| height(ctx, x)).collect();
    let min = *hs.iter().min().unwrap();
    (hs[0] == min && hs[hs.len() - 1] == min).then_some((cs[0], cs[cs.len() - 1], min))
}

/// Removable Dyck strips of `mu` as `(first, last, end height, μ - P)`.
pub fn removable_strips(ctx: Ctx, mu: &[usize]) -> Vec<(i64, i64, i64, Vec<usize>)> {
    partitions(ctx)
        .into_iter()
        .filter_map(|nu| dyck_strip(ctx, &nu, mu).map(|(f, l, h)| (f, l, h, nu)))
        .collect()
}

pub fn addable_strips(ctx: Ctx, lam: &[usize]) -> Vec<(i64, i64, i64, Vec<usize>)> {
    partitions(ctx)
        .into_iter()
        .filter_map(|nu| dyck_strip(ctx, lam, &nu).map(|(f, l, h)| (f, l, h, nu)))
        .collect()
}

/// `reg(α)` by repeatedly adding the broadest addable strip of height `k`
/// for `k = d+1, …, 0`, where `d` is the defect.
pub fn regularise_oracle(ctx: Ctx, alpha: &[usize]) -> (Vec<usize>, Vec<(i64, i64)>) {
    let d = cups(&labels(ctx, alpha)).len() as i64 - ctx.m as i64;
    let mut cur = alpha.to_vec();
    let mut paths = Vec::new();
    for k in d + 1..=0 {
        let best = addable_strips(ctx, &cur)
            .into_iter()
            .filter(|s| s.2 == k)
            .max_by_key(|s| (s.1 - s.0, -s.0))
            .expect("an addable strip at every non-positive height");
        paths.push((best.0, best.1));
        cur = best.3;
    }
    (cur, paths)
}

fn cover_or_distant(a: (i64, i64), b: (i64, i64)) -> bool {
    let covers = |x: (i64, i64), y: (i64, i64)| x.0 < y.0 && y.1 < x.1;
    covers(a, b) || covers(b, a) || a.1 + 2 <= b.0 || b.1 + 2 <= a.0
}

/// A tiling of `μ ∖ λ` by pairwise cover-or-distant Dyck strips, found by
/// peeling removable strips off `μ` in every possible order.
pub fn tiling_oracle(ctx: Ctx, lam: &[usize], mu: &[usize]) -> Option<BTreeSet<(i64, i64)>> {
    fn go(ctx: Ctx, lam: &[usize], cur: &[usize], used: &mut Vec<(i64, i64)>) -> Option<BTreeSet<(i64, i64)>> {
        if cur == lam {
            return Some(used.iter().copied().collect());
        }
        let lc = cells(lam);
        for (f, l, _, nu) in removable_strips(ctx, cur) {
            if !lc.is_subset(&cells(&nu)) || used.iter().any(|&u| !cover_or_distant(u, (f, l))) {
                continue;
            }
            used.push((f, l));
            if let Some(t) = go(ctx, lam, &nu, used) {
                return Some(t);
            }
            used.pop();
        }
        None
    }
    if !cells(lam).is_subset(&cells(mu)) {
        return None;
    }
    go(ctx, lam, mu, &mut Vec::new())
}

pub fn to_partition(p: &[usize]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}
