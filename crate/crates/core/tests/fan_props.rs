use proptest::prelude::*;
use toricmirror::fixtures;
use toricmirror::{Error, Fan, SeidelSign, ToricContext};

fn hirzebruch(a: i64) -> Fan {
    Fan::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    )
    .unwrap()
}

fn transformed(fan: &Fan, m: [[i64; 2]; 2]) -> Fan {
    let rays = fan
        .rays()
        .iter()
        .map(|r| {
            let v = r.coords();
            vec![
                m[0][0] * v[0] + m[0][1] * v[1],
                m[1][0] * v[0] + m[1][1] * v[1],
            ]
        })
        .collect();
    Fan::new(2, rays, fan.max_cones().to_vec()).unwrap()
}

/// Products of elementary matrices, all in GL(2, Z).
fn unimodular() -> impl Strategy<Value = [[i64; 2]; 2]> {
    prop::collection::vec((0u8..3, -2i64..3), 0..5).prop_map(|steps| {
        let mut m = [[1i64, 0], [0, 1]];
        for (kind, t) in steps {
            let e = match kind {
                0 => [[1, t], [0, 1]],
                1 => [[1, 0], [t, 1]],
                _ => [[0, 1], [1, 0]],
            };
            m = [
                [
                    e[0][0] * m[0][0] + e[0][1] * m[1][0],
                    e[0][0] * m[0][1] + e[0][1] * m[1][1],
                ],
                [
                    e[1][0] * m[0][0] + e[1][1] * m[1][0],
                    e[1][0] * m[0][1] + e[1][1] * m[1][1],
                ],
            ];
        }
        m
    })
}

fn two_dim_fixture() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["p2", "p1xp1", "f2", "chain3"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lattice_automorphisms_preserve_intersection_data(
        name in two_dim_fixture(),
        m in unimodular(),
    ) {
        let fan = fixtures::fan(name).unwrap();
        let a = ToricContext::new(fan.clone(), None).unwrap();
        let b = ToricContext::new(transformed(&fan, m), None).unwrap();
        prop_assert_eq!(a.psi_matrix(), b.psi_matrix());
        prop_assert_eq!(a.c1(), b.c1());
        prop_assert_eq!(a.is_semi_fano(), b.is_semi_fano());
    }

    #[test]
    fn basis_cone_choice_preserves_wall_pairings(name in two_dim_fixture(), pick in 0usize..8) {
        let fan = fixtures::fan(name).unwrap();
        let cone = pick % fan.max_cones().len();
        let a = ToricContext::new(fan.clone(), None).unwrap();
        let b = ToricContext::new(fan, Some(cone)).unwrap();
        for (wa, wb) in a.walls().iter().zip(b.walls()) {
            prop_assert_eq!(&wa.wall, &wb.wall);
            prop_assert_eq!(&wa.pairings, &wb.pairings);
            prop_assert_eq!(a.chern(&wa.class), b.chern(&wb.class));
        }
    }

    #[test]
    fn seidel_spaces_are_smooth_complete(name in two_dim_fixture(), ray in 0usize..8, plus in any::<bool>()) {
        let ctx = ToricContext::new(fixtures::fan(name).unwrap(), None).unwrap();
        let j = ray % ctx.num_rays();
        let sign = if plus { SeidelSign::Plus } else { SeidelSign::Minus };
        let e = ctx.seidel_fan(j, sign).unwrap();
        prop_assert_eq!(e.dim(), ctx.dim() + 1);
        prop_assert_eq!(e.num_rays(), ctx.num_rays() + 2);
        prop_assert_eq!(e.max_cones().len(), 2 * ctx.fan().max_cones().len());
        let total = ToricContext::new(e, None);
        prop_assert!(total.is_ok(), "{:?}", total.err());
        // two sections and a fibre: Picard rank grows by one
        prop_assert_eq!(total.unwrap().num_vars(), ctx.num_vars() + 1);
    }

    #[test]
    fn hirzebruch_semi_fano_threshold(a in 0i64..7) {
        let ctx = ToricContext::new(hirzebruch(a), None).unwrap();
        prop_assert_eq!(ctx.is_semi_fano(), a <= 2);
        // the negative section has self-intersection -a
        let wall = ctx.wall(&[1]).unwrap();
        prop_assert_eq!(wall.pairings[1], -a);
        prop_assert_eq!(ctx.chern(&wall.class), 2 - a);
    }

    #[test]
    fn ample_weight_is_positive_on_walls(name in two_dim_fixture()) {
        let ctx = ToricContext::new(fixtures::fan(name).unwrap(), None).unwrap();
        for w in ctx.walls() {
            prop_assert!(ctx.degree(&w.class) > num_traits::Zero::zero());
        }
    }
}

#[test]
fn non_semi_fano_reports_a_witness() {
    let ctx = ToricContext::new(hirzebruch(3), None).unwrap();
    let witness = ctx.semi_fano_check().witness.unwrap();
    assert_eq!(witness.wall, vec![1]);
    assert!(matches!(
        ctx.require_semi_fano(),
        Err(Error::NotSemiFano { .. })
    ));
}

#[test]
fn rejects_invalid_fans() {
    let doubled = Fan::new(
        2,
        vec![vec![1, 0], vec![1, 2], vec![-1, 0], vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
    );
    let singular = doubled.and_then(|f| ToricContext::new(f, None));
    assert!(matches!(singular, Err(Error::NonUnimodular { .. })));

    let open = Fan::new(
        2,
        vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
        vec![vec![0, 1], vec![1, 2]],
    )
    .unwrap();
    assert!(matches!(
        ToricContext::new(open, None),
        Err(Error::WallSharing { .. })
    ));

    let bad_index = Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 5]]);
    assert!(matches!(bad_index, Err(Error::ConeIndexOutOfRange { .. })));

    assert!(matches!(
        toricmirror::parse_fan("{\"dim\": 2}"),
        Err(Error::Malformed(_))
    ));
}
