use chamber_basis::chambers::{random_generic_flag, SignVector};
use chamber_basis::fixtures::{fixture, FIG1};
use chamber_basis::geometry::Flag;
use chamber_basis::io::parse_input;
use chamber_basis::os_algebra::{c_zero, epsilon, gamma_forms, os_boundary};
use chamber_basis::random::random_arrangement;
use chamber_basis::rational::{rat, ratio};
use chamber_basis::{Error, Instance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fig1() -> Instance {
    let (arr, flag) = FIG1.parse().unwrap();
    Instance::with_flag(arr, flag.as_ref().unwrap()).unwrap()
}

#[test]
fn fixture_lookup() {
    assert!(fixture("fig1").is_some());
    assert!(fixture("nope").is_none());
}

#[test]
fn fig1_far_chambers_and_orientation() {
    let (arr, flag) = FIG1.parse().unwrap();
    let flag = flag.unwrap();
    assert_eq!(epsilon(&arr, &flag, &[0]).unwrap(), -1);
    assert_eq!(epsilon(&arr, &flag, &[2, 3]).unwrap(), -1);
    assert_eq!(epsilon(&arr, &flag, &[3, 2]).unwrap(), 1);
    assert_eq!(epsilon(&arr, &flag, &[]).unwrap(), 1);
    // The far chamber of {H1} is the B1 side, of {H1, H3} the C1..C4 side.
    assert_eq!(c_zero(&arr, &flag, &[0]).unwrap(), vec![-1]);
    let inst = fig1();
    let st = &inst.stratification;
    let far13 = c_zero(&arr, &flag, &[0, 2]).unwrap();
    let inside: Vec<String> = st
        .stratum(2)
        .iter()
        .map(|&c| &st.chamber(c).sign_vector)
        .filter(|sv| sv.get(0) == far13[0] && sv.get(2) == far13[1])
        .map(ToString::to_string)
        .collect();
    assert_eq!(inside, ["--+-", "--++", "-++-", "-+++"]);
}

#[test]
fn fig1_strata_signs() {
    let inst = fig1();
    let st = &inst.stratification;
    let b1 = st.find(&SignVector::parse("----").unwrap()).unwrap();
    assert_eq!(st.sgn(b1), -1);
    for s in ["++--", "+++-", "++++"] {
        assert_eq!(st.sgn(st.find(&SignVector::parse(s).unwrap()).unwrap()), 1);
    }
    assert_eq!(st.sgn(st.stratum(0)[0]), 1);
    let a = st.stratum(0)[0];
    let b4 = st.find(&SignVector::parse("++++").unwrap()).unwrap();
    // Γ_{A,B4} = λ₂₃₄, sgn(B4) = +1
    assert_eq!(inst.constants.degree_map(a, b4), -1);
}

#[test]
fn absent_pair_has_zero_constant() {
    let inst = fig1();
    let st = &inst.stratification;
    let b2 = st.find(&SignVector::parse("++--").unwrap()).unwrap();
    let c1 = st.find(&SignVector::parse("-++-").unwrap()).unwrap();
    assert!(inst.constants.gamma(b2, c1).is_zero());
    assert_eq!(
        chamber_basis::chambers::separating_set(st.chamber(b2), st.chamber(c1)),
        vec![0, 2]
    );
}

#[test]
fn non_generic_flag_is_rejected() {
    let (arr, _) = FIG1.parse().unwrap();
    // Basepoint on H2.
    let on_h2 = Flag::new(
        vec![rat(200), rat(20)],
        vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]],
    )
    .unwrap();
    assert_eq!(
        Instance::with_flag(arr.clone(), &on_h2).unwrap_err(),
        Error::NotGeneric { q: 0 }
    );
    // F¹ through the triple point.
    let through = Flag::new(
        vec![rat(170), rat(60)],
        vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]],
    )
    .unwrap();
    assert_eq!(
        Instance::with_flag(arr.clone(), &through).unwrap_err(),
        Error::NotGeneric { q: 1 }
    );
    // Instance::new falls back to a random generic flag instead.
    let inst = Instance::new(arr, Some(&through), 7).unwrap();
    assert_ne!(inst.stratification.flag(), &through);
    assert!(!FIG1.diff(&inst).is_empty());
}

#[test]
fn non_essential_is_rejected() {
    let (arr, _) = parse_input("dim 2\n1 0 0\n1 0 -1\n").unwrap();
    assert_eq!(Instance::new(arr.clone(), None, 0).unwrap_err(), Error::NonEssential);
    assert_eq!(random_generic_flag(&arr, 0).unwrap_err(), Error::NonEssential);
}

#[test]
fn point_on_a_line() {
    let (arr, flag) = parse_input("dim 1\n1 0\nflag\npoint -1\ndir 1\n").unwrap();
    let inst = Instance::with_flag(arr, flag.as_ref().unwrap()).unwrap();
    assert_eq!(inst.stratification.sizes(), vec![1, 1]);
    assert_eq!(inst.betti.coefficients, vec![1, 1]);
    assert_eq!(inst.betti.beta, 0);
    let e = inst.constants.entries(0);
    assert_eq!(e.len(), 1);
    assert_eq!(e[0].separating, vec![0]);
    assert_eq!(e[0].n.abs(), 1);
}

#[test]
fn bundled_flag_is_kept() {
    let (arr, flag) = FIG1.parse().unwrap();
    let flag = flag.unwrap();
    assert_eq!(
        chamber_basis::chambers::ensure_generic_flag(&arr, Some(&flag), 3).unwrap(),
        flag
    );
}

#[test]
fn random_flags_stratify_correctly() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for k in 0..30 {
        let dim = 1 + k % 3;
        let arr = random_arrangement(&mut rng, dim, dim + k % 4);
        let inst = Instance::new(arr, None, k as u64).unwrap();
        let sizes: Vec<u64> = inst.stratification.sizes().iter().map(|&s| s as u64).collect();
        assert_eq!(sizes, inst.betti.coefficients);
    }
}

#[test]
fn relations_through_a_triple_line_do_not_change_constants() {
    // x = 0, y = 0, x + y = 0 share the z-axis.
    let text = "dim 3\n1 0 0 0\n0 1 0 0\n1 1 0 0\n0 0 1 0\n1 1 1 -1\n1 -1 2 3\n";
    let (arr, _) = parse_input(text).unwrap();
    let inst = Instance::new(arr, None, 11).unwrap();
    let st = &inst.stratification;
    let relation = os_boundary(&[0, 1, 2]);
    assert_eq!(relation.degree(), 2);
    assert!(inst.basis.xi(&relation).unwrap().is_zero());
    for &c in st.stratum(2) {
        let shifted = inst.basis.nu(c).add(&relation.scale(&ratio(-3, 2))).unwrap();
        assert_eq!(
            gamma_forms(&inst.basis, &shifted).unwrap(),
            gamma_forms(&inst.basis, inst.basis.nu(c)).unwrap()
        );
    }
}

#[test]
fn chamber_records_serialize() {
    let inst = fig1();
    let json = serde_json::to_value(inst.stratification.records()).unwrap();
    let first = &json[0];
    assert_eq!(first["sign_vector"], "----");
    assert_eq!(first["stratum"], 1);
    assert_eq!(first["sgn"], -1);
    assert_eq!(first["bounded"], false);
    assert!(first["witness"].as_array().unwrap().iter().all(|w| w.is_string()));
}
