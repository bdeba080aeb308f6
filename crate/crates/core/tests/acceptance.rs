//! Acceptance suite: exact small-instance reproductions and property checks,
//! one numbered criterion per test, each printing a PASS/FAIL line. All
//! comparisons are exact; run with `cargo test --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use immaculatum::asymptotics::{
    asymptotic_directions, asymptotically_immaculate, decide_infinite, forbidden_cones,
    witness_immaculate_family, AsymptoticDetail, Direction, InfinityReport,
    DEFAULT_CELL_LIMIT,
};
use immaculatum::cohomology::{cohomology_vector, is_immaculate, immaculate_scan, pattern_count};
use immaculatum::fan::{builtins, validate, StackyFan};
use immaculatum::homology::{reduced_homology_ranks, tempting_sets, TemptingCatalog};
use immaculatum::fan::full_complex;
use immaculatum::picard::{picard_group, DivisorClass, PicardData};
use immaculatum::polyhedra::{vertex_check, zonotope, zonotope_classes, ZonotopeRegion};
use immaculatum::Int;

fn int(v: i64) -> Int {
    BigInt::from(v)
}

fn criterion(number: u32, description: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    let result = catch_unwind(AssertUnwindSafe(body));
    match &result {
        Ok(()) => println!("ACCEPTANCE {number}: PASS - {description}"),
        Err(_) => println!("ACCEPTANCE {number}: FAIL - {description}"),
    }
    if let Err(payload) = result {
        std::panic::resume_unwind(payload);
    }
}

struct Instance {
    fan: StackyFan,
    pic: PicardData,
    catalog: TemptingCatalog,
}

fn instance(fan: StackyFan) -> Instance {
    assert!(validate(&fan).is_ok(), "fan {:?} failed validation", fan.name());
    let pic = picard_group(&fan);
    let catalog = tempting_sets(&fan).unwrap();
    Instance { fan, pic, catalog }
}

fn torsion_fan() -> StackyFan {
    StackyFan::new(
        1,
        vec![vec![int(2)], vec![int(-2)]],
        vec![vec![0], vec![1]],
        Some("torsion_z2".into()),
    )
    .unwrap()
}

fn p23() -> StackyFan {
    builtins::stacky_p1(2, 3).unwrap()
}

fn p23xp1() -> StackyFan {
    builtins::product(&p23(), &builtins::projective_space(1).unwrap())
}

/// The fixed catalog of builtin instances exercised by the property suites.
fn all_instances() -> Vec<Instance> {
    let p1 = builtins::projective_space(1).unwrap();
    vec![
        instance(builtins::projective_space(1).unwrap()),
        instance(builtins::projective_space(2).unwrap()),
        instance(builtins::projective_space(3).unwrap()),
        instance(builtins::product(&p1, &p1)),
        instance(builtins::hirzebruch(0).unwrap()),
        instance(builtins::hirzebruch(1).unwrap()),
        instance(builtins::hirzebruch(2).unwrap()),
        instance(p23()),
        instance(p23xp1()),
        instance(torsion_fan()),
    ]
}

fn random_class(pic: &PicardData, rng: &mut StdRng, half_width: i64) -> DivisorClass {
    let free = (0..pic.rank())
        .map(|_| int(rng.random_range(-half_width..=half_width)))
        .collect();
    let torsion = pic
        .torsion_invariants()
        .iter()
        .map(|t| {
            let t: i64 = t.try_into().expect("small torsion in test fans");
            int(rng.random_range(0..t))
        })
        .collect();
    DivisorClass { free, torsion }
}

fn scan_box(inst: &Instance, half_width: i64) -> Vec<DivisorClass> {
    let bounds = vec![(int(-half_width), int(half_width)); inst.pic.rank()];
    immaculate_scan(&inst.fan, &inst.pic, &inst.catalog, &bounds).unwrap()
}

#[test]
fn acceptance_01_p1_scan_and_finiteness() {
    criterion(1, "P^1: scan finds exactly O(-1); decision FINITE with certificate", || {
        let inst = instance(builtins::projective_space(1).unwrap());
        let found = scan_box(&inst, 10);
        let minus_one = inst.pic.class_of(&[int(-1), int(0)]).unwrap();
        assert_eq!(found, vec![minus_one]);

        let report = decide_infinite(&inst.pic, &inst.catalog, DEFAULT_CELL_LIMIT).unwrap();
        let InfinityReport::Finite { hyperplanes, cells } = report else {
            panic!("P^1 must be FINITE");
        };
        assert!(!cells.is_empty());
        assert_eq!(hyperplanes.len(), 1);
        // re-verify the covering certificate cell by cell
        let cones = forbidden_cones(&inst.pic, &inst.catalog);
        for cell in &cells {
            let pos = cones.iter().find(|c| c.subset == cell.positive_cover).unwrap();
            assert!(pos.cone.interior_contains(&cell.sample));
            let neg_sample: Vec<_> = cell.sample.iter().map(|x| -x.clone()).collect();
            let neg = cones.iter().find(|c| c.subset == cell.negative_cover).unwrap();
            assert!(neg.cone.interior_contains(&neg_sample));
        }
    });
}

#[test]
fn acceptance_02_p2_scan_and_finiteness() {
    criterion(2, "P^2: scan finds exactly O(-1), O(-2); decision FINITE", || {
        let inst = instance(builtins::projective_space(2).unwrap());
        let found = scan_box(&inst, 10);
        let mut expected: Vec<DivisorClass> = [-1i64, -2]
            .iter()
            .map(|&v| inst.pic.class_of(&[int(v), int(0), int(0)]).unwrap())
            .collect();
        expected.sort();
        assert_eq!(found, expected);
        let report = decide_infinite(&inst.pic, &inst.catalog, DEFAULT_CELL_LIMIT).unwrap();
        assert!(!report.is_infinite());
    });
}

#[test]
fn acceptance_03_p1xp1_witness_directions_and_scan() {
    criterion(3, "P^1 x P^1: INFINITE with axis witness; two asymptotic directions; exact scan", || {
        let p1 = builtins::projective_space(1).unwrap();
        let inst = instance(builtins::product(&p1, &p1));
        let report = decide_infinite(&inst.pic, &inst.catalog, DEFAULT_CELL_LIMIT).unwrap();
        let InfinityReport::Infinite { witness } = report else {
            panic!("P^1 x P^1 must be INFINITE");
        };
        let ruling_a = Direction::from_rationals(&inst.pic.ray_reals()[0]).unwrap();
        let ruling_b = Direction::from_rationals(&inst.pic.ray_reals()[2]).unwrap();
        assert!(witness == ruling_a || witness == ruling_b);

        let desc = asymptotic_directions(&inst.pic, &inst.catalog).unwrap();
        let AsymptoticDetail::RankTwo { arcs, isolated } = &desc.detail else {
            panic!("rank-two description expected");
        };
        assert!(arcs.is_empty());
        assert_eq!(isolated.len(), 2);

        // the immaculate classes in the box are exactly the two rulings
        // O(-1, k) and O(k, -1); as a set of classes that is 25 elements
        let found = scan_box(&inst, 6);
        let mut expected = Vec::new();
        for k in -6i64..=6 {
            expected.push(
                inst.pic
                    .class_of(&[int(-1), int(0), int(k), int(0)])
                    .unwrap(),
            );
            expected.push(
                inst.pic
                    .class_of(&[int(k), int(0), int(-1), int(0)])
                    .unwrap(),
            );
        }
        expected.sort();
        expected.dedup();
        assert_eq!(expected.len(), 25);
        assert_eq!(found, expected);
    });
}

#[test]
fn acceptance_04_hirzebruch_one() {
    criterion(4, "hirzebruch(1): INFINITE; one asymptotic direction; tempting catalog", || {
        let inst = instance(builtins::hirzebruch(1).unwrap());
        let report = decide_infinite(&inst.pic, &inst.catalog, DEFAULT_CELL_LIMIT).unwrap();
        assert!(report.is_infinite());

        let desc = asymptotic_directions(&inst.pic, &inst.catalog).unwrap();
        let AsymptoticDetail::RankTwo { arcs, isolated } = &desc.detail else {
            panic!("rank-two description expected");
        };
        assert!(arcs.is_empty());
        assert_eq!(isolated.len(), 1);

        let subsets: Vec<&Vec<usize>> = inst.catalog.subsets().collect();
        assert_eq!(
            subsets,
            vec![&vec![], &vec![0, 2], &vec![1, 3], &vec![0, 1, 2, 3]]
        );
    });
}

#[test]
fn acceptance_05_weighted_projective_line() {
    criterion(5, "stacky_p1(2,3): immaculate set matches the numerical-semigroup oracle", || {
        let inst = instance(p23());
        // Independent oracle: degree s has sections iff s lies in the
        // numerical semigroup <2,3>; top cohomology iff -5-s does. The
        // immaculate degrees in a window are the complement of both.
        let in_semigroup = |s: i64| -> bool { s >= 0 && s != 1 };
        let window = 12i64;
        let mut expected_degrees: Vec<i64> = (-window..=window)
            .filter(|&s| !in_semigroup(s) && !in_semigroup(-5 - s))
            .collect();
        expected_degrees.sort();
        // the two isolated gaps singled out by the forbidden-set picture
        assert!(expected_degrees.contains(&1));
        assert!(expected_degrees.contains(&-6));

        // degree of a class read off against a degree-one divisor class
        let unit = inst.pic.class_of(&[int(-1), int(1)]).unwrap();
        assert_eq!(unit.free[0].clone() * unit.free[0].clone(), int(1));
        let found = scan_box(&inst, window);
        let mut found_degrees: Vec<i64> = found
            .iter()
            .map(|c| {
                let v: i64 = (&c.free[0]).try_into().unwrap();
                let u: i64 = (&unit.free[0]).try_into().unwrap();
                v * u
            })
            .collect();
        found_degrees.sort();
        assert_eq!(found_degrees, expected_degrees);
    });
}

#[test]
fn acceptance_06_weighted_product_family() {
    criterion(6, "P(2:3) x P^1: O(1,n) immaculate for n = 1..50; decision INFINITE", || {
        let inst = instance(p23xp1());
        for n in 1i64..=50 {
            let class = inst
                .pic
                .class_of(&[int(-1), int(1), int(n), int(0)])
                .unwrap();
            assert!(
                is_immaculate(&inst.fan, &inst.pic, &inst.catalog, &class).unwrap(),
                "O(1,{n}) must be immaculate"
            );
        }
        let report = decide_infinite(&inst.pic, &inst.catalog, DEFAULT_CELL_LIMIT).unwrap();
        assert!(report.is_infinite());
    });
}

#[test]
fn acceptance_07_serre_duality() {
    criterion(7, "Serre duality h^i(L) = h^(d-i)(K-L) on 200 random classes per fan", || {
        for inst in all_instances() {
            let mut rng = StdRng::seed_from_u64(7);
            let d = inst.fan.dim();
            for _ in 0..200 {
                let class = random_class(&inst.pic, &mut rng, 6);
                let h = cohomology_vector(&inst.fan, &inst.pic, &inst.catalog, &class)
                    .unwrap()
                    .h;
                let dual = inst.pic.serre_dual(&class);
                let hd = cohomology_vector(&inst.fan, &inst.pic, &inst.catalog, &dual)
                    .unwrap()
                    .h;
                for i in 0..=d {
                    assert_eq!(
                        h[i],
                        hd[d - i],
                        "Serre duality failed for {class:?} on {:?}",
                        inst.fan.name()
                    );
                }
            }
        }
    });
}

#[test]
fn acceptance_08_sphere_homology() {
    criterion(8, "full fan complex has one-dimensional top reduced homology", || {
        for inst in all_instances() {
            let ranks = reduced_homology_ranks(&full_complex(&inst.fan));
            let d = inst.fan.dim() as i64;
            assert_eq!(ranks.rank(d - 1), 1, "{:?}", inst.fan.name());
        }
    });
}

#[test]
fn acceptance_09_zonotope_suite() {
    criterion(9, "interior zonotope classes immaculate; apex vertex and reflection checks", || {
        for inst in all_instances() {
            let z = zonotope(&inst.pic);
            let interior = zonotope_classes(&inst.pic, &z, ZonotopeRegion::Interior);
            assert!(
                !interior.is_empty(),
                "Z° of {:?} contains no class",
                inst.fan.name()
            );
            for class in &interior {
                assert!(
                    is_immaculate(&inst.fan, &inst.pic, &inst.catalog, class).unwrap(),
                    "class {class:?} in Z° of {:?} is not immaculate",
                    inst.fan.name()
                );
            }
            for (subset, _) in inst.catalog.iter() {
                let fc = immaculatum::polyhedra::forbidden_cone(&inst.pic, subset);
                assert!(
                    vertex_check(&z, &fc),
                    "vertex check failed for {subset:?} on {:?}",
                    inst.fan.name()
                );
            }
        }
    });
}

#[test]
fn acceptance_10_witness_families() {
    criterion(10, "50 classes along the witness line are immaculate on every INFINITE fan", || {
        for inst in all_instances() {
            let report =
                decide_infinite(&inst.pic, &inst.catalog, DEFAULT_CELL_LIMIT).unwrap();
            let InfinityReport::Infinite { witness } = report else {
                continue;
            };
            let family =
                witness_immaculate_family(&inst.fan, &inst.pic, &inst.catalog, &witness, 50)
                    .unwrap();
            assert_eq!(family.len(), 50, "{:?}", inst.fan.name());
        }
    });
}

fn oracle_count(pic: &PicardData, subset: &[usize], class: &DivisorClass, cap: i64) -> u64 {
    let n = pic.ray_count();
    let mut count = 0u64;
    let mut a = vec![0i64; n];
    loop {
        let divisor: Vec<Int> = (0..n)
            .map(|i| {
                if subset.contains(&i) {
                    int(-1 - a[i])
                } else {
                    int(a[i])
                }
            })
            .collect();
        if &pic.class_of(&divisor).unwrap() == class {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return count;
            }
            a[pos] += 1;
            if a[pos] <= cap {
                break;
            }
            a[pos] = 0;
            pos += 1;
        }
    }
}

fn stable_oracle_count(pic: &PicardData, subset: &[usize], class: &DivisorClass) -> u64 {
    let mut cap = 10i64;
    let mut prev = oracle_count(pic, subset, class, cap);
    loop {
        cap += 4;
        let next = oracle_count(pic, subset, class, cap);
        if next == prev {
            return next;
        }
        prev = next;
        assert!(cap < 60, "oracle failed to stabilize");
    }
}

#[test]
fn acceptance_11_oracle_equivalence() {
    criterion(11, "pattern counts equal brute-force preimage enumeration on 100 random triples", || {
        let instances = all_instances();
        let mut rng = StdRng::seed_from_u64(11);
        let mut triples = 0;
        while triples < 100 {
            for inst in &instances {
                let class = random_class(&inst.pic, &mut rng, 3);
                let subsets: Vec<&Vec<usize>> = inst.catalog.subsets().collect();
                let subset = subsets[rng.random_range(0..subsets.len())].clone();
                let fast = pattern_count(&inst.fan, &inst.pic, &class, &subset).unwrap();
                let slow = stable_oracle_count(&inst.pic, &subset, &class);
                assert_eq!(
                    fast, slow,
                    "count mismatch for {class:?}, subset {subset:?} on {:?}",
                    inst.fan.name()
                );
                triples += 1;
            }
        }
    });
}

#[test]
fn acceptance_12_torsion_fan() {
    criterion(12, "torsion fan: Z + Z/2 Picard group; immaculacy tracks torsion against the oracle", || {
        let inst = instance(torsion_fan());
        assert_eq!(inst.pic.rank(), 1);
        assert_eq!(inst.pic.torsion_invariants(), &[int(2)]);

        // Serre duality, exactly, across a window of classes
        for free in -6i64..=6 {
            for tor in 0i64..=1 {
                let class = DivisorClass {
                    free: vec![int(free)],
                    torsion: vec![int(tor)],
                };
                let h = cohomology_vector(&inst.fan, &inst.pic, &inst.catalog, &class)
                    .unwrap()
                    .h;
                let dual = inst.pic.serre_dual(&class);
                let hd = cohomology_vector(&inst.fan, &inst.pic, &inst.catalog, &dual)
                    .unwrap()
                    .h;
                assert_eq!(h[0], hd[1]);
                assert_eq!(h[1], hd[0]);
            }
        }

        // immaculacy agrees with the brute-force oracle on every class in
        // the window, and some pair with equal free part differs in torsion
        let mut distinguished = false;
        for free in -6i64..=6 {
            let mut verdicts = Vec::new();
            for tor in 0i64..=1 {
                let class = DivisorClass {
                    free: vec![int(free)],
                    torsion: vec![int(tor)],
                };
                let fast = is_immaculate(&inst.fan, &inst.pic, &inst.catalog, &class).unwrap();
                let slow = inst
                    .catalog
                    .subsets()
                    .all(|subset| stable_oracle_count(&inst.pic, subset, &class) == 0);
                assert_eq!(fast, slow, "oracle disagrees at ({free};{tor})");
                verdicts.push(fast);
            }
            if verdicts[0] != verdicts[1] {
                distinguished = true;
            }
        }
        assert!(
            distinguished,
            "no pair of torsion twists with equal free part differs in immaculacy"
        );
    });
}

#[test]
fn acceptance_13_decision_consistency() {
    criterion(13, "INFINITE decision iff nonempty asymptotic direction set, on every fan", || {
        for inst in all_instances() {
            let report =
                decide_infinite(&inst.pic, &inst.catalog, DEFAULT_CELL_LIMIT).unwrap();
            let desc = asymptotic_directions(&inst.pic, &inst.catalog).unwrap();
            let empty = desc
                .known_empty()
                .expect("all catalog fans have rank at most two");
            assert_eq!(
                report.is_infinite(),
                !empty,
                "decision and description disagree on {:?}",
                inst.fan.name()
            );
            // the witness itself must pass the membership oracle
            if let InfinityReport::Infinite { witness } = &report {
                let cones = forbidden_cones(&inst.pic, &inst.catalog);
                assert!(asymptotically_immaculate(&cones, witness));
            }
        }
    });
}
