mod common;

use common::*;
use lissajous_cheb::lattice::{gamma_set, Config, Rational};
use lissajous_cheb::nodes::{NodeTable, SampleVector};
use rand::SeedableRng;

fn cfg(eps: i64, n: &[i64], k: &[i64]) -> Config {
    Config::new(eps, n.to_vec(), k.to_vec()).unwrap()
}

fn sorted_indices(t: &NodeTable) -> Vec<Vec<i64>> {
    let mut v: Vec<Vec<i64>> = t.rows.iter().map(|r| r.index.clone()).collect();
    v.sort();
    v
}

#[test]
fn lobatto_three_points() {
    let t = NodeTable::build(&cfg(2, &[1], &[0]));
    let mut rows: Vec<(i64, f64, Rational)> = t.rows.iter().map(|r| (r.index[0], r.point[0], r.weight_exact)).collect();
    rows.sort_by_key(|r| r.0);
    assert_eq!(rows[0], (0, 1.0, Rational::new(1, 4).unwrap()));
    assert_eq!(rows[1], (1, 0.0, Rational::new(1, 2).unwrap()));
    assert_eq!(rows[2], (2, -1.0, Rational::new(1, 4).unwrap()));
}

#[test]
fn counts_and_classes() {
    let t = NodeTable::build(&cfg(2, &[1, 2], &[0, 0]));
    assert_eq!(t.len(), 8);
    assert_eq!(t.rows.iter().filter(|r| r.class == 0).count(), 6);
    assert_eq!(t.rows.iter().filter(|r| r.class == 1).count(), 2);
    assert_eq!(t.rows[0].point, vec![1.0, 1.0]);
}

#[test]
fn bijection_examples() {
    assert!(NodeTable::build(&cfg(2, &[1, 2], &[0, 0])).validate_bijection());
    assert!(NodeTable::build(&cfg(1, &[3], &[1])).validate_bijection());
    assert!(NodeTable::build(&cfg(1, &[1], &[0])).validate_bijection());
    assert!(NodeTable::build(&cfg(2, &[3, 5, 7], &[1, 0, 1])).validate_bijection());
}

#[test]
fn indices_match_oracle_and_cardinality_law() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let c = random_config(&mut rng, 10_000);
        let t = NodeTable::build(&c);
        let k: Vec<i64> = c.parity().iter().map(|&v| v as i64).collect();
        assert_eq!(sorted_indices(&t), oracle_node_indices(c.eps(), c.freq(), &k));
        assert_eq!(t.len(), gamma_set(&c).len(), "{c}");
    }
}

#[test]
fn parity_classes_are_disjoint() {
    let t = NodeTable::build(&cfg(2, &[3, 4], &[1, 0]));
    for a in t.rows.iter().filter(|r| r.class == 0) {
        for b in t.rows.iter().filter(|r| r.class == 1) {
            assert!(a.index.iter().zip(&b.index).all(|(x, y)| (x - y) % 2 != 0));
        }
    }
}

#[test]
fn weights_follow_the_formula() {
    let c = cfg(2, &[2, 3], &[0, 1]);
    for r in NodeTable::build(&c).rows {
        let interior = r.index.iter().zip(c.freq()).filter(|(&i, &n)| i > 0 && i < 2 * n).count();
        let expect = (1u64 << interior) as f64 / (2.0 * 4.0 * 6.0);
        assert_eq!(r.weight, expect);
        assert!(r.weight > 0.0);
    }
}

fn reflected_points(t: &NodeTable, axes: &[usize]) -> Vec<Vec<i64>> {
    // points compared through rounded keys; reflection is exact on cosines
    let mut v: Vec<Vec<i64>> = t
        .points()
        .into_iter()
        .map(|p| {
            (0..p.len())
                .map(|k| {
                    let z = if axes.contains(&k) { -p[k] } else { p[k] };
                    (z * 1e9).round() as i64
                })
                .collect()
        })
        .collect();
    v.sort();
    v
}

/// For eps = 1, flipping kappa_k reflects axis k when n_k is odd; when n_k is
/// even it reflects every other axis instead (all of which are odd).
#[test]
fn parity_flip_is_a_reflection_for_eps_one() {
    for (n, k) in [(vec![3, 4], vec![0, 1]), (vec![5, 7], vec![0, 0]), (vec![3, 5, 8], vec![1, 0, 0])] {
        let c = cfg(1, &n, &k);
        let base = NodeTable::build(&c);
        for axis in 0..n.len() {
            let flipped = NodeTable::build(&c.with_flipped_parity(axis));
            let axes: Vec<usize> =
                if n[axis] % 2 == 1 { vec![axis] } else { (0..n.len()).filter(|&j| j != axis).collect() };
            assert_eq!(reflected_points(&base, &axes), reflected_points(&flipped, &[]), "n={n:?} axis={axis}");
        }
    }
}

#[test]
fn csv_and_samples() {
    let c = cfg(2, &[1, 2], &[0, 0]);
    let t = NodeTable::build(&c);
    let csv = t.to_csv();
    assert!(csv.starts_with("i1,i2,z1,z2,w\n"));
    assert_eq!(csv.lines().count(), 9);
    let s = SampleVector::from_fn(&t, |x| x[0] + x[1]);
    assert_eq!(SampleVector::from_csv(&t, &s.to_csv(&t)).unwrap(), s);
    assert!(SampleVector::new(&t, vec![1.0; 3]).is_err());
    let swapped = s.to_csv(&t).replacen("0,0,", "0,1,", 1);
    assert!(SampleVector::from_csv(&t, &swapped).is_err());
    let json: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
    assert_eq!(json["rows"].as_array().unwrap().len(), 8);
}
