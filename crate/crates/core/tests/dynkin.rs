use flophelix::dynkin::{
    build_diagram, positive_roots, smooth_placement, standard_types, vertices_with_label, DynkinType, Placement,
};

fn labels(t: DynkinType) -> Vec<u32> {
    build_diagram(t, true).unwrap().labels().to_vec()
}

#[test]
fn exceptional_labels() {
    assert_eq!(labels(DynkinType::E6), [1, 1, 2, 2, 3, 2, 1]);
    assert_eq!(labels(DynkinType::E7), [1, 2, 2, 3, 4, 3, 2, 1]);
    assert_eq!(labels(DynkinType::E8), [1, 2, 3, 4, 6, 5, 4, 3, 2]);
}

#[test]
fn classical_labels() {
    assert_eq!(labels(DynkinType::A(4)), [1, 1, 1, 1, 1]);
    assert_eq!(labels(DynkinType::D(4)), [1, 1, 2, 1, 1]);
    assert_eq!(labels(DynkinType::D(6)), [1, 1, 2, 2, 2, 1, 1]);
}

#[test]
fn positive_root_counts() {
    for t in standard_types(9) {
        let d = build_diagram(t, false).unwrap();
        let edges: Vec<(usize, usize)> = d.edges().iter().map(|&(a, b, _)| (a, b)).collect();
        let n = t.rank();
        let expected = match t {
            DynkinType::A(_) => n * (n + 1) / 2,
            DynkinType::D(_) => n * (n - 1),
            DynkinType::E6 => 36,
            DynkinType::E7 => 63,
            DynkinType::E8 => 120,
        };
        assert_eq!(positive_roots(n, &edges).len(), expected, "{t}");
    }
}

#[test]
fn kernel_identity_on_every_affine_diagram() {
    for t in standard_types(12) {
        let d = build_diagram(t, true).unwrap();
        assert!(d.kernel_identity_holds(), "{t}");
        for v in 0..d.len() {
            let s: u32 = d.neighbours(v).iter().map(|&(w, m)| m * d.label(w)).sum();
            assert_eq!(s, 2 * d.label(v), "{t} at {}", d.id(v));
        }
    }
}

#[test]
fn label_three_placements() {
    let got = vertices_with_label(3, &standard_types(12), true).unwrap();
    let want = [
        Placement::new(DynkinType::E6, "a4"),
        Placement::new(DynkinType::E7, "a3"),
        Placement::new(DynkinType::E7, "a5"),
        Placement::new(DynkinType::E8, "a2"),
        Placement::new(DynkinType::E8, "a7"),
    ];
    assert_eq!(got, want);
}

#[test]
fn no_placements_beyond_six() {
    for ell in 7..=12 {
        assert!(vertices_with_label(ell, &standard_types(12), false).unwrap().is_empty());
    }
}

#[test]
fn smooth_placements_carry_their_length() {
    for ell in 1..=6u8 {
        let p = smooth_placement(ell).unwrap();
        let g = p.affine_diagram().unwrap();
        assert_eq!(g.label(g.marked().unwrap()), u32::from(ell));
        assert!(p.is_smooth_model());
    }
    assert!(smooth_placement(7).is_err());
}

#[test]
fn invalid_types_are_rejected() {
    assert!("E9".parse::<DynkinType>().is_err());
    assert!("D3".parse::<DynkinType>().is_err());
    assert!("A0".parse::<DynkinType>().is_err());
    assert!(build_diagram(DynkinType::D(2), true).is_err());
}

#[test]
fn serialization_is_stable() {
    let d = build_diagram(DynkinType::E6, true).unwrap();
    let a = serde_json::to_string(&d.to_json()).unwrap();
    let b = serde_json::to_string(&build_diagram(DynkinType::E6, true).unwrap().to_json()).unwrap();
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["family"], "E");
    assert_eq!(v["n"], 6);
    assert_eq!(v["extending"], "a0");
    assert_eq!(v["edges"].as_array().unwrap().len(), 6);
}
