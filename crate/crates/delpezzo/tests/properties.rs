use proptest::prelude::*;

use delpezzo::surface::catalog_load;
use delpezzo::toric::{
    check_optimized, check_reference, window_square_from_sequence, Property, Window,
};
use delpezzo::weyl::{reflect, simple_system};
use delpezzo::{DivisorClass, PicardLattice, ToricSystem};

fn coeffs(rank: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(-5i32..=5, rank)
}

/// Cyclic strong exceptional systems with the surfaces they live on.
const CYCLIC: &[(i32, &[&str], &[&str])] = &[
    (
        6,
        &["L13", "E1", "L12", "E2", "L23", "E3"],
        &["empty", "A1,4", "A2"],
    ),
    (
        5,
        &["L134", "E4", "E1-E4", "L12", "E2", "L23", "E3"],
        &["empty", "A1", "A1+A2"],
    ),
    (
        3,
        &[
            "E2-E4", "L125", "E5", "E1-E5", "L136", "E6", "E3-E6", "L234", "E4",
        ],
        &["empty", "2A1", "3A2"],
    ),
];

const IIB: &[&str] = &[
    "L25",
    "L137",
    "E3-E4",
    "L236",
    "L15",
    "E1-E7",
    "-L567",
    "3L-E1234-2E5-E67",
    "-L345",
    "-2L+E1+2E2+E5+E7",
];

fn parse_system(lat: &PicardLattice, terms: &[&str]) -> ToricSystem {
    let v: Vec<DivisorClass> = terms
        .iter()
        .map(|t| delpezzo::surface::parse_class(lat, t).unwrap())
        .collect();
    ToricSystem::validate(lat, v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reflection_is_an_involutive_isometry(deg in 1i32..=7, pick in any::<prop::sample::Index>(), a in coeffs(9), b in coeffs(9)) {
        let lat = PicardLattice::standard(deg).unwrap();
        let r = lat.rank();
        let roots = lat.enumerate_classes(-2).unwrap();
        let root = roots[pick.index(roots.len())];
        let (x, y) = (DivisorClass::new(&a[..r]), DivisorClass::new(&b[..r]));
        let rx = reflect(&lat, &root, &x).unwrap();
        let ry = reflect(&lat, &root, &y).unwrap();
        prop_assert_eq!(reflect(&lat, &root, &rx).unwrap(), x);
        prop_assert_eq!(lat.intersect(&rx, &ry), lat.intersect(&x, &y));
        prop_assert_eq!(reflect(&lat, &root, &lat.canonical()).unwrap(), lat.canonical());
    }

    #[test]
    fn complement_of_an_r_class(deg in 1i32..=7, r in -2i32..=1, pick in any::<prop::sample::Index>()) {
        let lat = PicardLattice::standard(deg).unwrap();
        let cls = lat.enumerate_classes(r).unwrap();
        prop_assume!(!cls.is_empty());
        let d = cls[pick.index(cls.len())];
        let dual = -lat.canonical() - d;
        prop_assert_eq!(lat.classify_r(&dual), Some(deg - 4 - r));
    }

    #[test]
    fn weyl_images_of_a_toric_system_stay_toric(word in prop::collection::vec(0usize..7, 0..40)) {
        let lat = PicardLattice::standard(2).unwrap();
        let simple = simple_system(&lat);
        let mut a = parse_system(&lat, IIB);
        let squares = a.squares(&lat);
        for i in word {
            let t: Vec<DivisorClass> = a.terms().iter().map(|d| reflect(&lat, &simple[i], d).unwrap()).collect();
            a = ToricSystem::validate(&lat, t).unwrap();
        }
        prop_assert_eq!(a.squares(&lat), squares.clone());
        for w in Window::all(a.len()) {
            prop_assert_eq!(a.window_square(&lat, w).unwrap(), window_square_from_sequence(&squares, w));
        }
    }

    #[test]
    fn moves_keep_cyclic_strong_systems(row in 0usize..3, moves in prop::collection::vec(0usize..12, 0..12)) {
        let (deg, terms, names) = CYCLIC[row];
        let cat = catalog_load(deg).unwrap();
        let lat = PicardLattice::standard(deg).unwrap();
        let mut a = parse_system(&lat, terms);
        let sq = a.squares(&lat);
        for m in moves {
            a = match m % 3 {
                0 => a.shift(),
                1 => a.symmetry(),
                _ => {
                    let k = (m / 3) % a.len();
                    match a.perm(&lat, k) {
                        Ok(b) => {
                            prop_assert_eq!(b.squares(&lat), a.squares(&lat));
                            b
                        }
                        Err(_) => a,
                    }
                }
            };
            prop_assert!(ToricSystem::validate(&lat, a.terms().to_vec()).is_ok());
        }
        let mut now = a.squares(&lat);
        let mut before = sq;
        now.sort();
        before.sort();
        prop_assert_eq!(now, before);
        for name in names {
            let s = cat.get(name).unwrap();
            prop_assert!(check_reference(s, &a, Property::CyclicStrong).unwrap().holds);
            prop_assert!(check_optimized(s, &a, Property::CyclicStrong).unwrap().holds);
        }
    }
}
