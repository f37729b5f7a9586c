use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;

use super::*;
use crate::partition::{enumerate_nc, for_each_nc};
use crate::stats::{block_count, count_subword};

const N_MAX: usize = 10;

fn nc(s: &str) -> NCPartition {
    s.parse().unwrap()
}

fn pat(s: &str) -> SubwordPattern {
    s.parse().unwrap()
}

fn all_nc(n: usize) -> Vec<NCPartition> {
    enumerate_nc(n).unwrap()
}

/// Runs `map` over NC_n for every n <= N_MAX, checking injectivity and
/// handing each `(π, map(π))` pair to `check`.
fn exhaustive<M, C>(map: M, check: C)
where
    M: Fn(&NCPartition) -> Result<NCPartition> + Sync,
    C: Fn(&NCPartition, &NCPartition) + Sync,
{
    exhaustive_from(0, map, check)
}

fn exhaustive_from<M, C>(n_min: usize, map: M, check: C)
where
    M: Fn(&NCPartition) -> Result<NCPartition> + Sync,
    C: Fn(&NCPartition, &NCPartition) + Sync,
{
    (n_min..=N_MAX).into_par_iter().for_each(|n| {
        let all = all_nc(n);
        let mut seen = HashSet::with_capacity(all.len());
        for pi in &all {
            let img = map(pi).unwrap_or_else(|e| panic!("{pi}: {e}"));
            assert_eq!(img.len(), n);
            check(pi, &img);
            assert!(seen.insert(img), "not injective on NC_{n}");
        }
    });
}

#[test]
fn f_worked_example() {
    let pi = NCPartition::new(vec![1, 2, 3, 1, 1, 4, 5, 1, 6, 7, 8, 6, 6, 1, 9]).unwrap();
    let got = map_f(&pi, &pat("231"), &pat("221")).unwrap();
    assert_eq!(got.letters(), &[1, 2, 2, 1, 1, 3, 3, 1, 4, 5, 5, 4, 6, 1, 7]);
    assert_eq!(map_f_inverse(&got, &pat("231"), &pat("221")).unwrap(), pi);
    assert_eq!(count_subword(&pi, &pat("231")), 3);
    assert_eq!(count_subword(&got, &pat("221")), 3);
}

#[test]
fn f_fixes_avoiders_and_identity_pair() {
    assert_eq!(map_f(&nc("1234"), &pat("231"), &pat("221")).unwrap(), nc("1234"));
    for pi in all_nc(7) {
        assert_eq!(map_f(&pi, &pat("2331"), &pat("2331")).unwrap(), pi);
    }
}

#[test]
fn f_rejects_bad_patterns() {
    let pi = nc("1221");
    assert!(matches!(map_f(&pi, &pat("211"), &pat("221")), Err(Error::FamilyViolation(_))));
    assert!(matches!(map_f(&pi, &pat("231"), &pat("2231")), Err(Error::PatternLengthMismatch(3, 4))));
}

#[test]
fn f_exchanges_strings() {
    let pairs = [("231", "221"), ("2231", "2341"), ("2321", "2331"), ("2221", "2341"), ("2231", "2321"), ("23451", "22221")];
    for (a, b) in pairs {
        let (t1, t2) = (pat(a), pat(b));
        exhaustive(
            |pi| map_f(pi, &t1, &t2),
            |pi, img| {
                assert_eq!(count_subword(pi, &t1), count_subword(img, &t2), "{a}/{b} at {pi}");
                assert_eq!(count_subword(pi, &t2), count_subword(img, &t1), "{a}/{b} at {pi}");
                assert_eq!(&map_f_inverse(img, &t1, &t2).unwrap(), pi);
            },
        );
    }
}

#[test]
fn g_worked_example() {
    let got = map_g(&nc("122322114115"), &[], 2).unwrap();
    assert_eq!(got, nc("122332214415"));
    assert_eq!(count_subword(&got, &pat("221")), 3);
    assert_eq!(count_subword(&got, &pat("211")), 1);
}

#[test]
fn g_rejects_bad_sigma() {
    let pi = nc("1221");
    assert!(matches!(map_g(&pi, &[4], 2), Err(Error::FamilyViolation(_))));
    assert!(matches!(map_g(&pi, &[3, 2, 3], 2), Err(Error::FamilyViolation(_))));
    assert!(matches!(map_g(&pi, &[], 1), Err(Error::FamilyViolation(_))));
}

#[test]
fn g_is_block_preserving_involution() {
    let cases: [(&[Letter], usize); 7] = [(&[], 2), (&[], 3), (&[3], 2), (&[3, 3], 2), (&[3, 4], 2), (&[3, 2], 2), (&[3], 3)];
    for (sigma, b) in cases {
        let mut head = vec![2];
        head.extend_from_slice(sigma);
        let mut wa = head.clone();
        wa.extend(std::iter::repeat_n(1, b));
        let mut wb = vec![2; b];
        wb.extend_from_slice(sigma);
        wb.push(1);
        let (ta, tb) = (SubwordPattern::new(wa).unwrap(), SubwordPattern::new(wb).unwrap());
        exhaustive(
            |pi| map_g(pi, sigma, b),
            |pi, img| {
                assert_eq!(&map_g(img, sigma, b).unwrap(), pi, "not an involution at {pi}");
                assert_eq!(block_count(pi.letters()), block_count(img.letters()));
                assert_eq!(count_subword(pi, &ta), count_subword(img, &tb), "{ta}/{tb} at {pi}");
                assert_eq!(count_subword(pi, &tb), count_subword(img, &ta), "{ta}/{tb} at {pi}");
            },
        );
    }
}

#[test]
fn equiv_carries_occurrences() {
    let pairs = [
        ("211", "221"),
        ("211", "231"),
        ("221", "211"),
        ("2311", "2221"),
        ("2111", "2341"),
        ("2311", "2111"),
        ("2111", "2111"),
        ("23111", "22321"),
    ];
    for (a, b) in pairs {
        let (t1, t2) = (pat(a), pat(b));
        exhaustive(
            |pi| map_equiv(pi, &t1, &t2),
            |pi, img| {
                assert_eq!(count_subword(pi, &t1), count_subword(img, &t2), "{a}/{b} at {pi}");
                assert_eq!(&map_equiv_inverse(img, &t1, &t2).unwrap(), pi);
            },
        );
    }
}

#[test]
fn equiv_identity_and_errors() {
    for pi in all_nc(6) {
        assert_eq!(map_equiv(&pi, &pat("211"), &pat("211")).unwrap(), pi);
    }
    assert!(matches!(map_equiv(&nc("11"), &pat("211"), &pat("2111")), Err(Error::PatternLengthMismatch(3, 4))));
    assert!(matches!(map_equiv(&nc("11"), &pat("121"), &pat("211")), Err(Error::FamilyViolation(_))));
}

#[test]
fn runrev_is_involution_exchanging_sides() {
    let cases = [(2, "1", 1), (1, "1", 2), (2, "1", 2), (3, "1", 1), (2, "11", 1), (2, "12", 1), (1, "121", 2), (3, "1", 2)];
    for (a, rho, b) in cases {
        let rho = nc(rho);
        let left = PatternFamily::Sandwich { a, rho: rho.clone(), b }.pattern().unwrap();
        let right = PatternFamily::Sandwich { a: b, rho: rho.clone(), b: a }.pattern().unwrap();
        exhaustive(
            |pi| map_runrev(pi, a, &rho, b),
            |pi, img| {
                assert_eq!(&map_runrev(img, a, &rho, b).unwrap(), pi);
                assert_eq!(count_subword(pi, &left), count_subword(img, &right), "{left}/{right} at {pi}");
                assert_eq!(count_subword(pi, &right), count_subword(img, &left));
            },
        );
    }
}

#[test]
fn runrev_example() {
    assert_eq!(map_runrev(&nc("12113"), 2, &nc("1"), 1).unwrap(), nc("11213"));
    assert_eq!(map_runrev(&nc("121131"), 2, &nc("1"), 1).unwrap(), nc("121131"));
}

#[test]
fn descent_code_properties() {
    let pairs = [(2, 2), (2, 3), (3, 2), (3, 3), (2, 4)];
    let pats: Vec<_> = pairs
        .iter()
        .map(|&(a, m)| (SubwordPattern::run_staircase(a, m), SubwordPattern::staircase_tail(m, a)))
        .collect();
    exhaustive_from(1, map_descent_code, |pi, img| {
        assert_eq!(&map_descent_code(img).unwrap(), pi);
        assert_eq!(descent_bottoms(pi.letters()), descent_bottoms(img.letters()));
        let set = |w: &[Letter]| w.iter().copied().collect::<std::collections::BTreeSet<_>>();
        let (sp, si) = (descent::sections(pi.letters()), descent::sections(img.letters()));
        assert_eq!(sp.len(), si.len());
        for (x, y) in sp.iter().zip(&si) {
            assert_eq!(set(x), set(y));
        }
        for (run, stair) in &pats {
            assert_eq!(count_subword(pi, run), count_subword(img, stair), "{run}/{stair} at {pi}");
            assert_eq!(count_subword(pi, stair), count_subword(img, run));
        }
    });
}

#[test]
fn descent_code_changes_letter_multiset() {
    // the letter set of each section is kept, multiplicities are not
    assert_eq!(map_descent_code(&nc("112")).unwrap(), nc("122"));
}

#[test]
fn equiv_joint_distribution_is_symmetric() {
    for n in 0..=N_MAX {
        let mut before = BTreeMap::new();
        let mut after = BTreeMap::new();
        let (t1, t2) = (pat("2311"), pat("2221"));
        for_each_nc(n, |w| {
            let pi = NCPartition::new(w.to_vec()).unwrap();
            let img = map_equiv(&pi, &t1, &t2).unwrap();
            *before.entry((count_subword(&pi, &t1), count_subword(&pi, &t2))).or_insert(0u64) += 1;
            *after.entry((count_subword(&img, &t2), count_subword(&img, &t1))).or_insert(0u64) += 1;
        });
        assert_eq!(before, after, "joint n={n}");
    }
}
