mod common;

use classalg::{class_enumerate, CheckerSurface, GroupElement};
use common::*;

#[test]
fn classes_and_surfaces_correspond() {
    let cfg = cfg();
    for n in 0..=4 {
        let classes = class_enumerate(&s2(), n, &cfg).unwrap();
        let mut surfaces = Vec::new();
        for c in &classes {
            let s = CheckerSurface::from_class(c).unwrap();
            assert_eq!(&s.to_class(&cfg).unwrap(), c);
            surfaces.push(s);
        }
        surfaces.dedup();
        assert_eq!(surfaces.len(), classes.len());
    }
}

#[test]
fn relabeling_keeps_the_unlabeled_surface() {
    let cfg = cfg();
    let mut r = rng(3);
    for _ in 0..50 {
        let g = random_element(&s2(), 4, &mut r);
        let s = CheckerSurface::from_element(&g).unwrap();
        let t = s.relabel(&random_perm(4, &mut r)).unwrap();
        assert_eq!(s.unlabeled(&cfg).unwrap(), t.unlabeled(&cfg).unwrap());
        assert_eq!(s.topology(), t.topology());
    }
}

#[test]
fn euler_characteristic_is_even() {
    for n in 1..=3 {
        for g in GroupElement::enumerate(&s2(), n) {
            let t = CheckerSurface::from_element(&g).unwrap().topology();
            for c in &t.components {
                assert_eq!(c.euler % 2, 0);
                assert!(c.genus >= 0);
                assert_eq!(c.faces, 2 * c.edges / 3);
            }
            assert_eq!(t.faces, 2 * n);
            assert_eq!(t.edges, 3 * n);
        }
    }
}

#[test]
fn json_roundtrip() {
    let mut r = rng(11);
    for _ in 0..20 {
        let s = CheckerSurface::from_element(&random_element(&s2(), 3, &mut r)).unwrap();
        assert_eq!(CheckerSurface::from_json(&s.to_json()).unwrap(), s);
    }
}

#[test]
fn gluing_face_counts() {
    let cfg = cfg();
    let basis = classalg::table::basis_up_to(&s2(), 2, &cfg).unwrap();
    for r in &basis {
        for q in &basis {
            let (rs, qs) = (CheckerSurface::from_class(r).unwrap(), CheckerSurface::from_class(q).unwrap());
            for lambda in classalg::pb_enumerate(rs.size(), qs.size()) {
                let glued = rs.glue(&qs, &lambda).unwrap();
                assert_eq!(glued.topology().faces, 2 * (rs.size() + qs.size() - lambda.rank()));
            }
        }
    }
}

#[test]
fn counts_add_under_disjoint_union() {
    let mut r = rng(5);
    for _ in 0..30 {
        let a = CheckerSurface::from_element(&random_element(&s2(), 2, &mut r)).unwrap();
        let b = CheckerSurface::from_element(&random_element(&s2(), 3, &mut r)).unwrap();
        let (ta, tb, tu) = (a.topology(), b.topology(), a.disjoint_union(&b).topology());
        assert_eq!(tu.vertices, ta.vertices + tb.vertices);
        assert_eq!(tu.euler, ta.euler + tb.euler);
        assert_eq!(tu.components.len(), ta.components.len() + tb.components.len());
        assert!(tu.components.iter().all(|c| c.euler <= 2));
    }
}
