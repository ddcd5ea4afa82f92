//! Cell and Specht modules, simple heads, Alperin diagrams and Ext-quivers.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arc_algebra::{ArcAlgebra, Diagram};
use crate::combinatorics::{defect, Ctx, Partition, QPoly};
use crate::dyck;
use crate::exactlinalg::{rank, ExactMatrix, Ring};
use crate::presentation::{ArrowKind, Presentation};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellVariant {
    Standard,
    Specht,
}

/// `Δ(λ)` or `S(λ) = Δ(λ)e`. Basis vector `ν` is the diagram `λ̲λν̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellModule {
    pub label: usize,
    pub variant: CellVariant,
    pub basis: Vec<usize>,
    pub degrees: Vec<usize>,
}

impl CellModule {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn graded_dim(&self) -> QPoly {
        let mut q = QPoly::zero();
        for &d in &self.degrees {
            q.add_term(d as u32, 1);
        }
        q
    }

    fn position(&self, nu: usize) -> Option<usize> {
        self.basis.iter().position(|&b| b == nu)
    }

    /// `v_ν · d` in the basis of the module.
    pub fn act(&self, alg: &ArcAlgebra, i: usize, d: &Diagram) -> Vec<(usize, i64)> {
        let lam = self.label;
        let v = Diagram::new(lam, lam, self.basis[i]);
        let mut out = BTreeMap::new();
        for (t, &c) in alg.multiply(&v, d).terms() {
            // terms with weight above λ lie in the cell ideal
            if t.weight as usize == lam && t.bottom as usize == lam {
                if let Some(j) = self.position(t.top as usize) {
                    *out.entry(j).or_insert(0) += c;
                }
            }
        }
        out.into_iter().filter(|&(_, c)| c != 0).collect()
    }

    /// Acting algebra: `K` on `Δ`, `H` on `S`.
    pub fn acting_basis(&self, alg: &ArcAlgebra) -> Vec<Diagram> {
        match self.variant {
            CellVariant::Standard => alg.basis_k(),
            CellVariant::Specht => alg.basis_h(),
        }
    }

    /// Dimension of the submodule generated by the basis vector `i`.
    pub fn generated_rank(&self, alg: &ArcAlgebra, i: usize, ring: Ring) -> usize {
        let rows: Vec<Vec<i64>> = self
            .acting_basis(alg)
            .par_iter()
            .filter(|d| d.bottom as usize == self.basis[i])
            .map(|d| {
                let mut row = vec![0i64; self.dim()];
                for (j, c) in self.act(alg, i, d) {
                    row[j] = c;
                }
                row
            })
            .filter(|r| r.iter().any(|&c| c != 0))
            .collect();
        if rows.is_empty() {
            return 0;
        }
        rank(&ExactMatrix::from_rows(&rows), ring)
    }
}

pub fn cell_module(alg: &ArcAlgebra, lam: usize, variant: CellVariant) -> CellModule {
    let cat = &alg.cat;
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    for nu in 0..cat.len() {
        if variant == CellVariant::Specht && !cat.regular[nu] {
            continue;
        }
        if let Some(d) = cat.degree(nu, lam) {
            basis.push(nu);
            degrees.push(d);
        }
    }
    CellModule { label: lam, variant, basis, degrees }
}

/// The simple head `D(reg α)⟨d(α)⟩` of `S(α)`.
pub fn simple_head(ctx: Ctx, alpha: &Partition) -> Result<(Partition, i64)> {
    let (reg, _) = dyck::regularise(ctx, alpha)?;
    Ok((reg, defect(ctx, alpha)))
}

/// Checks `simple_head` on `S(α)`: the lowest degree is spanned by the single
/// vector `reg(α)`, sitting in degree `-d(α)`, and that vector generates.
pub fn verify_simple_head(alg: &ArcAlgebra, alpha: usize, ring: Ring) -> Result<bool> {
    let cat = &alg.cat;
    let (reg, shift) = simple_head(alg.ctx(), &cat.partitions[alpha])?;
    let reg = alg.index(&reg)?;
    let s = cell_module(alg, alpha, CellVariant::Specht);
    let Some(&low) = s.degrees.iter().min() else {
        return Ok(false);
    };
    let lowest: Vec<usize> = (0..s.dim()).filter(|&i| s.degrees[i] == low).collect();
    if lowest.len() != 1 || s.basis[lowest[0]] != reg || low as i64 != -shift {
        return Ok(false);
    }
    Ok(s.generated_rank(alg, lowest[0], ring) == s.dim())
}

/// Edges `μ → ν` of the Alperin diagram of `Δ(λ)` (or `S(λ)`): consecutive
/// degrees differing by one Dyck path.
pub fn alperin_edges(alg: &ArcAlgebra, lam: usize, variant: CellVariant) -> Vec<(usize, usize)> {
    let cat = &alg.cat;
    let ctx = alg.ctx();
    let m = cell_module(alg, lam, variant);
    let mut out = Vec::new();
    for (i, &mu) in m.basis.iter().enumerate() {
        for (j, &nu) in m.basis.iter().enumerate() {
            if m.degrees[j] != m.degrees[i] + 1 {
                continue;
            }
            let w = &cat.weights[mu];
            let step = dyck::removable_w(ctx, w).iter().any(|p| dyck::remove_w(ctx, w, p) == Some(cat.weights[nu]))
                || dyck::addable_w(ctx, w).iter().any(|(p, _)| dyck::add_w(ctx, w, p) == Some(cat.weights[nu]));
            if step {
                out.push((mu, nu));
            }
        }
    }
    out
}

/// Ext-quiver over a field: vertices are the regular partitions, `edges`
/// holds `dim Ext¹(D(λ), D(μ))` where non-zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtQuiver {
    pub ctx: Ctx,
    pub p: u64,
    pub vertices: Vec<usize>,
    pub edges: BTreeMap<(usize, usize), usize>,
}

impl ExtQuiver {
    pub fn loops(&self) -> Vec<usize> {
        self.edges.keys().filter(|(a, b)| a == b).map(|k| k.0).collect()
    }

    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        self.edges.get(&(a, b)).copied().unwrap_or(0)
    }

    /// Unordered off-diagonal edges.
    pub fn undirected_edges(&self) -> Vec<(usize, usize)> {
        self.edges.keys().filter(|(a, b)| a < b).copied().collect()
    }

    pub fn to_dot(&self, alg: &ArcAlgebra) -> String {
        let name = |i: usize| format!("\"{}\"", alg.cat.partitions[i]);
        let mut s = format!("graph ext_{}_{}_p{} {{\n", self.ctx.m, self.ctx.n, self.p);
        for &v in &self.vertices {
            s.push_str(&format!("  {};\n", name(v)));
        }
        for (&(a, b), &k) in &self.edges {
            if a <= b {
                for _ in 0..k {
                    s.push_str(&format!("  {} -- {};\n", name(a), name(b)));
                }
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, alg: &ArcAlgebra) -> serde_json::Value {
        let name = |i: usize| alg.cat.partitions[i].to_string();
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|(&(a, b), &k)| serde_json::json!({ "from": name(a), "to": name(b), "multiplicity": k }))
            .collect();
        serde_json::json!({
            "ctx": self.ctx,
            "p": self.p,
            "vertices": self.vertices.iter().map(|&v| name(v)).collect::<Vec<_>>(),
            "edges": edges,
        })
    }
}

fn check_characteristic(p: u64) -> Result<()> {
    let prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    if p == 0 || prime {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{p} is neither 0 nor a prime")))
    }
}

/// `dim 1_λ (J/J²) 1_μ` with `J` the positive-degree part of `H`.
pub fn ext_quiver(alg: &ArcAlgebra, p: u64) -> Result<ExtQuiver> {
    check_characteristic(p)?;
    let ring = Ring::from_characteristic(p);
    let cat = &alg.cat;
    let vertices = cat.regular_indices();
    let j: Vec<Diagram> = alg.basis_h().into_iter().filter(|d| alg.degree(d) != Some(0)).collect();
    let mut block: HashMap<(usize, usize), Vec<Diagram>> = HashMap::new();
    for d in &j {
        block.entry((d.bottom as usize, d.top as usize)).or_default().push(*d);
    }
    let pairs: Vec<(usize, usize)> = vertices.iter().flat_map(|&a| vertices.iter().map(move |&b| (a, b))).collect();
    let mults: Vec<((usize, usize), usize)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let target = block.get(&(a, b)).map_or(&[][..], Vec::as_slice);
            if target.is_empty() {
                return ((a, b), 0);
            }
            let col: HashMap<Diagram, usize> = target.iter().enumerate().map(|(i, d)| (*d, i)).collect();
            let mut rows: Vec<Vec<i64>> = Vec::new();
            for &mid in &vertices {
                let (Some(l), Some(r)) = (block.get(&(a, mid)), block.get(&(mid, b))) else {
                    continue;
                };
                for x in l {
                    for y in r {
                        let z = alg.multiply(x, y);
                        if z.is_zero() {
                            continue;
                        }
                        let mut row = vec![0i64; target.len()];
                        for (d, &c) in z.terms() {
                            row[col[d]] = c;
                        }
                        rows.push(row);
                    }
                }
            }
            let r = if rows.is_empty() { 0 } else { rank(&ExactMatrix::from_rows(&rows), ring) };
            ((a, b), target.len() - r)
        })
        .collect();
    let edges = mults.into_iter().filter(|&(_, k)| k > 0).collect();
    Ok(ExtQuiver { ctx: alg.ctx(), p, vertices, edges })
}

/// The predicted Ext-quiver: one edge for each pair differing by a single
/// Dyck path; for `m = n` loops at `(m^a, (m-a)^{m-a})`, or everywhere when
/// `p = 2`.
pub fn expected_quiver(alg: &ArcAlgebra, p: u64) -> Result<ExtQuiver> {
    check_characteristic(p)?;
    let ctx = alg.ctx();
    let pres = Presentation::new(ctx);
    let q = pres.build_quiver();
    let mut edges = BTreeMap::new();
    for (a, b, kind) in q.arrows {
        if kind != ArrowKind::Loop {
            edges.insert((a, b), 1);
        }
    }
    if ctx.m == ctx.n {
        let m = ctx.m;
        for &v in &q.vertices {
            let loop_here = p == 2
                || (1..=m).any(|a| {
                    let mut parts = vec![m; a];
                    parts.extend(std::iter::repeat_n(m - a, m - a));
                    Partition::new(parts).ok().and_then(|x| alg.cat.index_of(&x)) == Some(v)
                });
            if loop_here {
                edges.insert((v, v), 1);
            }
        }
    }
    Ok(ExtQuiver { ctx, p, vertices: q.vertices, edges })
}
