mod common;

use arcalg::arc_algebra::{ArcAlgebra, Diagram, Element, SurgeryOrder};
use arcalg::exactlinalg::{is_unimodular, ExactMatrix};
use common::{contexts, ctx};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn surgery_order_is_irrelevant() {
    for c in contexts(5) {
        let alg = ArcAlgebra::new(c);
        let basis = alg.basis_k();
        for a in &basis {
            for b in basis.iter().filter(|b| b.bottom == a.top) {
                assert_eq!(
                    alg.multiply_with(a, b, SurgeryOrder::LeftToRight),
                    alg.multiply_with(a, b, SurgeryOrder::RightToLeft),
                    "{} · {}",
                    alg.show(a),
                    alg.show(b)
                );
            }
        }
    }
}

#[test]
fn mismatched_products_vanish() {
    let alg = ArcAlgebra::new(ctx(2, 2));
    let basis = alg.basis_h();
    for a in &basis {
        for b in basis.iter().filter(|b| b.bottom != a.top) {
            assert!(alg.multiply(a, b).is_zero());
        }
    }
}

#[test]
fn k_is_unital_and_associative() {
    let alg = ArcAlgebra::new(ctx(3, 3));
    let one = alg.unit();
    let basis = alg.basis_k();
    for d in &basis {
        let x = Element::basis(*d);
        assert_eq!(alg.mul(&one, &x), x);
        assert_eq!(alg.mul(&x, &one), x);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..500 {
        let a = basis[rng.gen_range(0..basis.len())];
        let bs: Vec<_> = basis.iter().filter(|b| b.bottom == a.top).collect();
        let b = *bs[rng.gen_range(0..bs.len())];
        let cs: Vec<_> = basis.iter().filter(|c| c.bottom == b.top).collect();
        let c = *cs[rng.gen_range(0..cs.len())];
        let l = alg.mul(&alg.multiply(&a, &b), &Element::basis(c));
        let r = alg.mul(&Element::basis(a), &alg.multiply(&b, &c));
        assert_eq!(l, r);
    }
}

#[test]
fn involution_is_an_anti_automorphism() {
    for c in contexts(5) {
        let alg = ArcAlgebra::new(c);
        let basis = alg.basis_k();
        for a in &basis {
            assert_eq!(alg.degree(a), alg.degree(&a.star()));
            for b in basis.iter().filter(|b| b.bottom == a.top) {
                assert_eq!(alg.multiply(a, b).star(), alg.multiply(&b.star(), &a.star()));
            }
        }
    }
}

#[test]
fn tiling_products_agree_in_any_order() {
    for c in contexts(6) {
        let alg = ArcAlgebra::new(c);
        let n = alg.cat.len();
        for lam in 0..n {
            for mu in 0..n {
                if alg.cat.degree(mu, lam).is_none() {
                    continue;
                }
                let (first, second) = alg.product_of_tiling(lam, mu).unwrap();
                let d = Element::basis(Diagram::new(lam, lam, mu));
                assert!(first == d || first == d.scaled(-1), "D for ({lam}, {mu}) in {c}");
                if let Some(s) = second {
                    assert!(s == d || s == d.scaled(-1));
                }
            }
        }
    }
}

/// Products `(D^α_λ)* D^α_μ` of single-path generators span `H` over ℤ.
#[test]
fn cellular_products_form_a_basis() {
    for c in contexts(5) {
        let alg = ArcAlgebra::new(c);
        let basis = alg.basis_h();
        let mut rows = Vec::new();
        for d in &basis {
            let (lam, alpha, mu) = (d.bottom as usize, d.weight as usize, d.top as usize);
            let left = alg.product_of_tiling(alpha, lam).unwrap().0.star();
            let right = alg.product_of_tiling(alpha, mu).unwrap().0;
            let x = alg.mul(&left, &right);
            rows.push(basis.iter().map(|b| x.0.get(b).copied().unwrap_or(0)).collect::<Vec<i64>>());
        }
        assert!(is_unimodular(&ExactMatrix::from_rows(&rows)), "{c}");
    }
}

#[test]
fn dimensions_agree_with_oracle() {
    for c in contexts(7) {
        let alg = ArcAlgebra::new(c);
        assert_eq!(alg.dim_h(), common::flip_count_dim_h(c), "{c}");
        assert!(alg.dim_k() >= alg.dim_h());
    }
}
