mod common;

use arcalg::arc_algebra::ArcAlgebra;
use arcalg::presentation::{ArrowKind, Presentation, Token};
use common::{contexts, ctx};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(pres: &Presentation, rng: &mut ChaCha8Rng, len: usize) -> Vec<Token> {
    let q = pres.build_quiver();
    let mut v = q.vertices[rng.gen_range(0..q.vertices.len())];
    let mut w = vec![Token::Idem(v)];
    for _ in 0..len {
        let out: Vec<_> = q.arrows.iter().filter(|a| a.0 == v).collect();
        if out.is_empty() {
            break;
        }
        let &(s, t, kind) = out[rng.gen_range(0..out.len())];
        w.push(match kind {
            ArrowKind::Loop => Token::Loop(s),
            _ => Token::D(s, t),
        });
        v = t;
    }
    w
}

#[test]
fn phi_respects_involution_up_to_character() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for c in contexts(6) {
        let pres = Presentation::new(c);
        if pres.build_quiver().arrows.is_empty() {
            continue;
        }
        for _ in 0..40 {
            let len = rng.gen_range(1..5);
            let w = random_word(&pres, &mut rng, len);
            let dual: Vec<Token> = w.iter().rev().map(|t| t.dual()).collect();
            let chi = pres.involution_character(&w).unwrap();
            assert_eq!(pres.phi_word(&dual).unwrap(), pres.phi_word(&w).unwrap().star().scaled(chi), "{w:?} in {c}");
        }
    }
}

#[test]
fn phi_is_graded() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for c in contexts(6) {
        let pres = Presentation::new(c);
        if pres.build_quiver().arrows.is_empty() {
            continue;
        }
        for _ in 0..40 {
            let len = rng.gen_range(1..5);
            let w = random_word(&pres, &mut rng, len);
            let deg: usize = w.iter().map(|t| t.degree()).sum();
            let x = pres.phi_word(&w).unwrap();
            assert!(x.terms().all(|(d, _)| pres.alg.degree(d) == Some(deg)));
        }
    }
}

#[test]
fn spanning_set_has_dimension_many_elements() {
    for c in contexts(6) {
        let pres = Presentation::new(c);
        let span = pres.spanning_set().unwrap();
        assert_eq!(span.len(), ArcAlgebra::new(c).dim_h(), "{c}");
    }
}

#[test]
fn quiver_is_symmetric() {
    for c in contexts(7) {
        let q = Presentation::new(c).build_quiver();
        for &(s, t, kind) in &q.arrows {
            let back = match kind {
                ArrowKind::DDown => ArrowKind::DUp,
                ArrowKind::DUp => ArrowKind::DDown,
                ArrowKind::Loop => ArrowKind::Loop,
            };
            assert!(q.arrows.contains(&(t, s, back)));
        }
    }
}

#[test]
fn relations_hold_in_three_by_three() {
    let pres = Presentation::new(ctx(3, 3));
    let r = pres.verify_relations();
    assert!(r.ok(), "{:?}", r.failed);
    assert!(r.total > 0);
}

#[test]
fn unimodular_up_to_five() {
    for c in contexts(5) {
        let cert = Presentation::new(c).verify_isomorphism().unwrap();
        assert!(cert.unimodular(), "{c}: {:?}", cert.failures);
    }
}
