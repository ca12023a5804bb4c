use chernloci::formulas::{locus_class, locus_class_deformed};
use chernloci::symbolic::{SymPoly, SymbolKind};
use chernloci::triples::{build, enumerate_inputs, Family, TripleInput};

fn valid(family: Family, max_s: usize, max_k: i64, bound: i64) -> Vec<chernloci::triples::NormalizedTriple> {
    enumerate_inputs(family, max_s, max_k, bound).iter().filter_map(|i| build(i).ok()).collect()
}

#[test]
fn classes_are_homogeneous_of_the_codimension() {
    for family in [Family::A, Family::B, Family::C, Family::D] {
        let triples = valid(family, 2, 3, 3);
        assert!(!triples.is_empty());
        for t in triples {
            let f = locus_class(&t).unwrap();
            let size = t.size() as u32;
            assert!(f.poly.is_zero() || f.poly.is_homogeneous_of(size), "{t:?}: {}", f.poly);
            let expected_power = if matches!(family, Family::B | Family::D) { t.r as u32 } else { 0 };
            assert_eq!(f.two_power, expected_power);
        }
    }
}

#[test]
fn type_b_and_c_share_the_polynomial() {
    for input in enumerate_inputs(Family::C, 2, 3, 3) {
        let Ok(c) = build(&input) else { continue };
        let b = build(&TripleInput { family: Family::B, ..input }).unwrap();
        assert_eq!(locus_class(&b).unwrap().poly, locus_class(&c).unwrap().poly);
    }
}

#[test]
fn deformed_class_at_z_zero() {
    for t in valid(Family::C, 2, 3, 3) {
        let deformed = locus_class_deformed(&t).unwrap();
        assert!(deformed.poly.is_homogeneous_of(t.size() as u32));
        let at_zero = deformed.poly.substitute(|s| (s.kind == SymbolKind::Z).then(SymPoly::zero));
        assert_eq!(at_zero, locus_class(&t).unwrap().poly, "{t:?}");
    }
}

#[test]
fn deformed_class_is_type_c_only() {
    let t = build(&TripleInput::a(&[0], &[1], &[2])).unwrap();
    assert!(locus_class_deformed(&t).is_err());
}
