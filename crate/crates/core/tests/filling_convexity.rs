mod common;

use std::sync::OnceLock;

use common::{ac_oracle, DistanceTable};
use fftp_core::bounds::IsoperimetricProfile;
use fftp_core::convexity::ac_constant;
use fftp_core::fellow::sync_distance;
use fftp_core::filling::{check_filling_radius, fill_loop};
use fftp_core::{Ball, GroupSpec, PathTrace, Word};
use proptest::prelude::*;

fn loop_from(spec: &GroupSpec, raw: &[u16], order: &[usize]) -> Word {
    let al = spec.alphabet();
    let v: Vec<_> = raw
        .iter()
        .map(|&x| fftp_core::alphabet::Letter(x))
        .collect();
    let mut inv: Vec<_> = v.iter().map(|&x| al.inverse(x)).collect();
    let n = inv.len();
    for (i, &j) in order.iter().enumerate().take(n) {
        inv.swap(i, j % n);
    }
    Word(v.into_iter().chain(inv).collect())
}

fn f2_ball() -> &'static Ball {
    static CELL: OnceLock<Ball> = OnceLock::new();
    CELL.get_or_init(|| Ball::build(&GroupSpec::free("ab").unwrap(), 8).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn z2_loops_fill_within_bounds(
        raw in prop::collection::vec(0u16..4, 0..=5),
        order in prop::collection::vec(0usize..16, 5),
    ) {
        let z2 = GroupSpec::free_abelian("ab").unwrap();
        let ball = Ball::build(&z2, 12).unwrap();
        let w = loop_from(&z2, &raw, &order);
        let filling = fill_loop(&ball, 2, &w).unwrap();
        prop_assert!(filling.cells <= w.len() * w.len());
        prop_assert!(filling.max_perimeter <= 6);
        prop_assert_eq!(filling.ladder.last().unwrap(), &Word::empty());
        for pair in filling.ladder.windows(2) {
            prop_assert!(pair[1].len() < pair[0].len());
            prop_assert_eq!(z2.eval_word(&pair[1]).unwrap(), z2.identity());
            let a = PathTrace::from_identity(&z2, pair[0].clone()).unwrap();
            let b = PathTrace::from_identity(&z2, pair[1].clone()).unwrap();
            prop_assert!(sync_distance(&ball, &a, &b).unwrap().distance <= 2);
        }
        let trace = PathTrace::from_identity(&z2, w.clone()).unwrap();
        let r = trace.points().iter().map(|p| ball.norm(p).unwrap()).max().unwrap();
        prop_assert!(check_filling_radius(&ball, &filling, r, &IsoperimetricProfile::Quadratic).unwrap());
    }

    #[test]
    fn free_group_loops_fill(
        raw in prop::collection::vec(0u16..4, 0..=4),
    ) {
        let ball = f2_ball();
        let f2 = ball.spec();
        let v = Word(raw.iter().map(|&x| fftp_core::alphabet::Letter(x)).collect());
        let w = v.concat(&f2.alphabet().inverse_word(&v));
        let filling = fill_loop(ball, 2, &w).unwrap();
        prop_assert!(filling.max_perimeter <= 6);
        prop_assert!(filling.cells <= w.len() * w.len());
    }
}

#[test]
fn corridor_cells_cover_each_step() {
    let z2 = GroupSpec::free_abelian("ab").unwrap();
    let ball = Ball::build(&z2, 12).unwrap();
    let w = z2.parse_word("aabba'a'b'b'").unwrap();
    let filling = fill_loop(&ball, 2, &w).unwrap();
    assert_eq!(filling.cells, filling.corridor_cells.len());
    for cell in &filling.corridor_cells {
        assert!(cell.step < filling.steps());
        assert!(cell.t < filling.ladder[cell.step].len());
        assert!(cell.perimeter >= 1);
    }
}

#[test]
fn ac_matches_bfs_oracle() {
    let groups = [
        GroupSpec::free_abelian("ab").unwrap(),
        GroupSpec::free("ab").unwrap(),
        GroupSpec::from_json(
            r#"{"alphabet": ["s", "r"], "backend": {"kind": "permutation", "permutations": {
                "s": [1, 0, 2, 3], "r": [1, 2, 3, 0]}}}"#,
        )
        .unwrap(),
    ];
    for spec in groups {
        let table = DistanceTable::by_enumeration(&spec, 6);
        let ball = Ball::build(&spec, 6).unwrap();
        for i in 1..=3 {
            for n in 0..=5 {
                let report = ac_constant(&ball, i, n).unwrap();
                assert_eq!(report.c_val, ac_oracle(&table, i, n), "i={i} n={n}");
                if let (Some(c), Some((g, h))) = (report.c_val, report.witness_pair) {
                    assert_eq!((ball.depth(g), ball.depth(h)), (n, n));
                    assert!(ball.distance(ball.element(g), ball.element(h)).unwrap() <= i);
                    assert!(c >= ball.distance(ball.element(g), ball.element(h)).unwrap());
                }
            }
        }
    }
}
