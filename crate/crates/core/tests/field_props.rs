use etgrs_core::{Error, FieldSpec};

const MATRIX: [u32; 7] = [4, 7, 8, 9, 11, 13, 16];

fn gf(q: u32) -> FieldSpec {
    FieldSpec::parse(&q.to_string()).unwrap()
}

fn check_axioms(f: &FieldSpec) {
    let q = f.q();
    for a in 0..q {
        assert_eq!(f.add(a, 0), a);
        assert_eq!(f.mul(a, 1), a);
        assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "{f:?} a={a}");
        }
        for b in 0..q {
            assert_eq!(f.add(a, b), f.add(b, a));
            assert_eq!(f.mul(a, b), f.mul(b, a));
            assert_eq!(f.sub(f.add(a, b), b), a);
            for c in 0..q {
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            }
        }
    }
}

#[test]
fn field_axioms_exhaustive() {
    for q in MATRIX {
        check_axioms(&gf(q));
    }
}

#[test]
fn alternative_gf8_modulus_is_a_field_with_different_tables() {
    let alt = FieldSpec::parse("2^3:1,0,1,1").unwrap();
    check_axioms(&alt);
    let std = gf(8);
    let differs = (0..8).any(|a| (0..8).any(|b| alt.mul(a, b) != std.mul(a, b)));
    assert!(differs);
}

#[test]
fn orders_divide_group_order_and_match_power_cycles() {
    for q in MATRIX {
        let f = gf(q);
        for a in 1..q {
            let mut seen = std::collections::HashSet::new();
            let mut x = 1;
            loop {
                if !seen.insert(x) {
                    break;
                }
                x = f.mul(x, a);
            }
            let order = f.order(a).unwrap();
            assert_eq!(seen.len() as u64, order);
            assert_eq!((q as u64 - 1) % order, 0);
        }
    }
}

#[test]
fn primitive_element_is_smallest_generator() {
    for q in MATRIX {
        let f = gf(q);
        let g = f.primitive_element().value();
        let brute = (1..q).find(|&a| {
            let mut x = a;
            let mut ord = 1;
            while x != 1 {
                x = f.mul(x, a);
                ord += 1;
            }
            ord == q - 1
        });
        assert_eq!(Some(g), brute, "q = {q}");
    }
    assert_eq!(gf(8).primitive_element().value(), 2);
    assert_eq!(gf(13).primitive_element().value(), 2);
    assert_eq!(gf(2).primitive_element().value(), 1);
}

#[test]
fn digit_roundtrip_all_elements() {
    for q in MATRIX {
        let f = gf(q);
        for a in 0..q {
            let d = f.digits(a);
            assert_eq!(d.len(), f.m() as usize);
            assert_eq!(f.from_digits(&d).unwrap(), a);
        }
    }
}

#[test]
fn enumerate_lists_all_encodings() {
    for q in [4, 8, 13] {
        let v: Vec<u32> = gf(q).elements().map(|e| e.value()).collect();
        assert_eq!(v, (0..q).collect::<Vec<_>>());
    }
}

#[test]
fn default_moduli_are_primitive() {
    // Conway polynomials are primitive: the class of x generates the group.
    for (p, m) in [(2, 2), (2, 3), (2, 4), (2, 8), (3, 2), (3, 3), (5, 2), (7, 2), (2, 12), (3, 6)] {
        let f = FieldSpec::new(p, m, None).unwrap();
        assert_eq!(f.order(p).unwrap(), f.q() as u64 - 1, "GF({p}^{m})");
    }
}

#[test]
fn known_default_moduli() {
    let modulus = |s: &str| FieldSpec::parse(s).unwrap().modulus().to_vec();
    assert_eq!(modulus("2^2"), vec![1, 1, 1]);
    assert_eq!(modulus("2^3"), vec![1, 1, 0, 1]);
    assert_eq!(modulus("3^2"), vec![2, 2, 1]);
    assert_eq!(modulus("2^4"), vec![1, 1, 0, 0, 1]);
    assert_eq!(modulus("5^2"), vec![2, 4, 1]);
    assert_eq!(modulus("3^3"), vec![1, 2, 0, 1]);
}

#[test]
fn small_field_identities() {
    let f = gf(8);
    assert_eq!(f.mul(2, 4), 3);
    assert_eq!(f.inv(2), Some(5));
    assert_eq!(f.pow(2, 7), 1);
    assert_eq!(f.pow(2, 3), 3);
    let f = gf(13);
    assert_eq!(f.add(6, 9), 2);
    assert_eq!(f.mul(9, 3), 1);
    assert_eq!(f.inv(9), Some(3));
    assert_eq!(f.pow(2, 12), 1);
}

#[test]
fn largest_field_is_supported() {
    let f = FieldSpec::parse("2^16").unwrap();
    assert_eq!(f.q(), 65536);
    let a = 0xBEEF;
    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
    assert!(matches!(FieldSpec::parse("3^11"), Err(Error::FieldTooLarge { .. })));
}

#[test]
fn element_text() {
    let f = gf(8);
    let e = |s| f.parse_element(s).unwrap().value();
    assert_eq!(e("g^1"), 2);
    assert_eq!(e("g^3"), 3);
    assert_eq!(e("g^7"), 1);
    assert_eq!(e("0"), 0);
    assert!(f.parse_element("g^").is_err());
}
