use std::collections::{BTreeMap, BTreeSet};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use viracomb::characters::{fermionic_character_12, sectors_up_to};
use viracomb::halfpath::{self, HalfPath};
use viracomb::particles::{apply_move, dissect, enumerate_moves, minimal_path, minimal_weight, sector_gf, sector_census, Sector};
use viracomb::qseries::QSeries;

#[test]
fn minimal_paths_round_trip_and_have_minimal_weight() {
    for t2 in 4..=10u32 {
        for n in sectors_up_to(t2, 12, 0) {
            let s = Sector::new(t2, n).unwrap();
            let h = minimal_path(&s);
            assert_eq!(dissect(&h).unwrap().sector, s);
            assert_eq!(h.weight().unwrap(), minimal_weight(&s), "{s:?}");
        }
    }
}

#[test]
fn census_matches_sector_generating_functions() {
    for t2 in 4..=10u32 {
        let census = sector_census(t2, 12).unwrap();
        for (s, gf) in &census {
            assert_eq!(gf, &sector_gf(s, 12), "T={t2} sector {:?}", s.n());
        }
        let total = sectors_up_to(t2, 15, 0)
            .into_iter()
            .map(|n| sector_gf(&Sector::new(t2, n).unwrap(), 15))
            .fold(QSeries::zero(15), |a, b| &a + &b);
        assert_eq!(total, fermionic_character_12(t2, 15).unwrap());
        assert_eq!(total, halfpath::generating_function(t2 as i64, 2, 2, 15).unwrap());
    }
}

/// Every path of a sector is reached from its minimal path by moves.
#[test]
fn moves_generate_each_sector() {
    const N: i64 = 12;
    for t2 in 4..=10u32 {
        let mut by_sector: BTreeMap<Sector, BTreeSet<HalfPath>> = BTreeMap::new();
        for h in halfpath::enumerate(t2 as i64, 2, 2, N as usize).unwrap() {
            by_sector.entry(dissect(&h).unwrap().sector).or_default().insert(h);
        }
        for (s, paths) in by_sector {
            let mut seen = BTreeSet::from([minimal_path(&s)]);
            let mut frontier = vec![minimal_path(&s)];
            while let Some(h) = frontier.pop() {
                if h.weight().unwrap() == N {
                    continue;
                }
                for m in enumerate_moves(&h).unwrap() {
                    let next = apply_move(&h, m.particle).unwrap();
                    if seen.insert(next.clone()) {
                        frontier.push(next);
                    }
                }
            }
            assert_eq!(seen, paths, "T={t2} sector {:?}", s.n());
        }
    }
}

#[test]
fn sampled_moves_raise_weight_by_one() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut applied = 0usize;
    while applied < 12_000 {
        let t2 = rng.gen_range(4..=10u32);
        let sectors = sectors_up_to(t2, 14, 0);
        let s = Sector::new(t2, sectors[rng.gen_range(0..sectors.len())].clone()).unwrap();
        let mut h = minimal_path(&s);
        for _ in 0..rng.gen_range(1..=40) {
            let moves = enumerate_moves(&h).unwrap();
            if moves.is_empty() {
                break;
            }
            let m = &moves[rng.gen_range(0..moves.len())];
            let w = h.weight().unwrap();
            let prev = h.clone();
            h = apply_move(&h, m.particle).unwrap_or_else(|e| panic!("{prev} {m:?}: {e}"));
            assert_eq!(h.weight().unwrap(), w + 1);
            assert_eq!(dissect(&h).unwrap().sector, s);
            applied += 1;
        }
    }
}
