mod common;

use std::collections::HashSet;

use common::{
    gm_pairs_by_scan, low_degree_divisor, one_plus_z_valuation, random_rooted, SpotCheck,
};
use digreedoid::census::build_database;
use digreedoid::enumerate::rooted_classes;
use digreedoid::factor::{factorise, gm_factorise};
use digreedoid::greedoid::{poly_dc, poly_subsets, MemoCache};
use digreedoid::BiPoly;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn gm_search_matches_database_scan() {
    let db = build_database(4, false, &MemoCache::new()).unwrap();
    for n in 1..=4 {
        let combined = db.combined_up_to(n);
        for f in db.unique_polys(n) {
            let fast: HashSet<(BiPoly, BiPoly)> =
                gm_factorise(&f, &combined).unwrap().into_iter().collect();
            assert_eq!(fast, gm_pairs_by_scan(&f, &combined), "{f}");
        }
    }
}

#[test]
fn relabelled_digraphs_land_in_their_own_class() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=4 {
        let list = rooted_classes(n, false).unwrap();
        let forms: Vec<Vec<u8>> = (0..list.rooted_classes().len())
            .map(|i| list.rooted_digraph(i).canonical_form(true).unwrap())
            .collect();
        assert_eq!(forms.iter().collect::<HashSet<_>>().len(), forms.len());
        for _ in 0..200 {
            let i = rng.gen_range(0..forms.len());
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let moved = list.rooted_digraph(i).permute(&perm);
            let form = moved.canonical_form(true).unwrap();
            assert_eq!(forms.iter().position(|f| *f == form), Some(i));
        }
    }
}

#[test]
fn valuation_oracle_agrees_with_library() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cache = MemoCache::new();
    for _ in 0..300 {
        let n = rng.gen_range(2..=5);
        let d = random_rooted(&mut rng, n, 12);
        let f = poly_dc(&d, &cache);
        assert_eq!(
            one_plus_z_valuation(&f),
            f.valuation(&BiPoly::one_plus_z()).unwrap(),
            "{d}"
        );
    }
}

#[test]
fn random_polynomials_agree_with_subset_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let cache = MemoCache::new();
    for _ in 0..500 {
        let n = rng.gen_range(1..=6);
        let d = random_rooted(&mut rng, n, 12);
        assert_eq!(poly_dc(&d, &cache), poly_subsets(&d).unwrap(), "{d}");
    }
}

#[test]
fn spot_check_finds_planted_divisors() {
    let g: BiPoly = "1 + t + z".parse().unwrap();
    let h: BiPoly = "2 + t^2 + t*z".parse().unwrap();
    let product = &g * &h;
    assert!(matches!(
        low_degree_divisor(&product, 6),
        SpotCheck::Divisor(_)
    ));
    assert_eq!(low_degree_divisor(&h, 6), SpotCheck::NoDivisorFound);
    assert_eq!(low_degree_divisor(&product.pow(4), 6), SpotCheck::TooLarge);
}

#[test]
fn order_three_factors_pass_spot_check() {
    let db = build_database(3, false, &MemoCache::new()).unwrap();
    for f in db.factors_up_to(3) {
        assert_eq!(low_degree_divisor(&f, 6), SpotCheck::NoDivisorFound, "{f}");
        assert!(factorise(&f).unwrap().is_irreducible());
    }
}
