use proptest::prelude::*;

use ortho_guard::document::{
    solution_from_json, solution_to_json, terrain_from_json, terrain_to_json,
};
use ortho_guard::generator::{generate_random, GenSpec};
use ortho_guard::visibility::leftmost_seers;
use ortho_guard::{
    sees, solve_full, solve_left_convex, solve_right_convex_fast, solve_right_convex_reference,
    verify_coverage, BuildMode, Engine, GuardSolution, Terrain,
};

/// Orthogonal chain from run lengths and nonzero rises, built without the
/// crate's generator.
fn chain(x0: i64, y0: i64, steps: &[(i64, i64)], last: i64) -> Vec<(i64, i64)> {
    let (mut x, mut y) = (x0, y0);
    let mut pts = vec![(x, y)];
    for &(run, rise) in steps {
        x += run;
        pts.push((x, y));
        y += rise;
        pts.push((x, y));
    }
    pts.push((x + last, y));
    pts
}

fn rise() -> impl Strategy<Value = i64> {
    prop_oneof![-6i64..=-1, 1i64..=6]
}

prop_compose! {
    fn terrain_coords()(
        x0 in -1000i64..1000,
        y0 in -1000i64..1000,
        steps in prop::collection::vec((1i64..6, rise()), 0..40),
        last in 1i64..6,
    ) -> Vec<(i64, i64)> {
        chain(x0, y0, &steps, last)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn terrain_json_round_trip(c in terrain_coords()) {
        let t = Terrain::from_coords(&c).unwrap();
        let text = terrain_to_json(&t);
        let back = terrain_from_json(&text, BuildMode::Strict).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(terrain_to_json(&back), text);
    }

    #[test]
    fn mirror_is_an_involution_and_swaps_sides(c in terrain_coords()) {
        let t = Terrain::from_coords(&c).unwrap();
        let m = t.mirror();
        prop_assert_eq!(&m.terrain.mirror().terrain, &t);
        let (a, b) = (t.classify(), m.terrain.classify());
        for i in 0..t.len() {
            prop_assert_eq!(b.class(m.map(i)), a.class(i).mirrored());
            prop_assert_eq!(m.map(m.map(i)), i);
        }
    }

    #[test]
    fn translation_keeps_classes_and_solutions(c in terrain_coords(), dx in -500i64..500, dy in -500i64..500) {
        let t = Terrain::from_coords(&c).unwrap();
        let moved: Vec<(i64, i64)> = c.iter().map(|&(x, y)| (x + dx, y + dy)).collect();
        let u = Terrain::from_coords(&moved).unwrap();
        prop_assert_eq!(t.classify().classes, u.classify().classes);
        prop_assert_eq!(solve_full(&t), solve_full(&u));
    }

    #[test]
    fn fast_matches_reference(c in terrain_coords()) {
        let t = Terrain::from_coords(&c).unwrap();
        let f = solve_right_convex_fast(&t);
        let r = solve_right_convex_reference(&t);
        prop_assert_eq!(&f.guards, &r.guards);
        prop_assert_eq!(&f.assignment, &r.assignment);
        prop_assert_eq!(&f.witnesses, &r.witnesses);
        prop_assert_eq!(solve_left_convex(&t, Engine::Fast).guards, solve_left_convex(&t, Engine::Reference).guards);
    }

    #[test]
    fn right_solution_is_consistent(c in terrain_coords()) {
        let t = Terrain::from_coords(&c).unwrap();
        let cl = t.classify();
        let sol = solve_right_convex_fast(&t);
        prop_assert!(verify_coverage(&t, &sol.guards, &cl.right_convex).unwrap().is_empty());
        let keys: Vec<usize> = sol.assignment.keys().copied().collect();
        prop_assert_eq!(keys, cl.right_convex.clone());
        for (&w, &g) in &sol.assignment {
            prop_assert!(sees(&t, g, w).unwrap());
            prop_assert!(sol.guards.binary_search(&g).is_ok());
        }
        if !sol.degenerate {
            prop_assert!(sol.guards.iter().all(|&g| cl.class(g).is_reflex()));
        }
        prop_assert!(sol.visits <= 3 * t.len() as u64);
    }

    #[test]
    fn full_covers_everything(c in terrain_coords()) {
        let t = Terrain::from_coords(&c).unwrap();
        let all: Vec<usize> = (0..t.len()).collect();
        let sol = solve_full(&t);
        prop_assert!(verify_coverage(&t, &sol.guards, &all).unwrap().is_empty());
        let back = solution_from_json(&solution_to_json(&sol)).unwrap();
        // the degenerate flag is not serialized
        prop_assert_eq!(back, GuardSolution { degenerate: false, ..sol });
    }

    #[test]
    fn leftmost_seer_sees_and_nothing_further_left_does(c in terrain_coords()) {
        let t = Terrain::from_coords(&c).unwrap();
        let l = leftmost_seers(&t);
        for (i, &s) in l.iter().enumerate() {
            prop_assert!(s <= i);
            prop_assert!(sees(&t, s, i).unwrap());
            for u in 0..s {
                prop_assert!(!sees(&t, u, i).unwrap());
            }
        }
    }
}

#[test]
fn generator_output_is_strictly_valid() {
    for seed in 0..100_000u64 {
        let spec = GenSpec {
            seed,
            steps: 1 + (seed % 25) as usize,
            max_run: 1 + (seed % 5) as i64,
            max_rise: 1 + (seed % 7) as i64,
            pattern: None,
        };
        let t = generate_random(&spec).unwrap();
        assert_eq!(t.len(), 2 * spec.steps);
        Terrain::build(&t.coords(), BuildMode::Strict).unwrap();
    }
}
