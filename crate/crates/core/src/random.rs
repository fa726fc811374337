//! Seeded random arrangements with small integer normals.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arrangement::{Arrangement, Lattice};

/// Largest absolute value of a normal coordinate.
pub const COEFF_BOUND: i64 = 3;

fn draw(rng: &mut ChaCha8Rng, ell: usize) -> Vec<i64> {
    loop {
        let v: Vec<i64> = (0..ell).map(|_| rng.gen_range(-COEFF_BOUND..=COEFF_BOUND)).collect();
        if v.iter().any(|&x| x != 0) {
            return v;
        }
    }
}

fn parallel(a: &[i64], b: &[i64]) -> bool {
    (0..a.len()).all(|i| (i..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

/// An essential arrangement of `n` distinct hyperplanes in `R^ell`.
pub fn random_arrangement(rng: &mut ChaCha8Rng, ell: usize, n: usize) -> Arrangement {
    assert!(n >= ell, "an essential arrangement needs n >= ell");
    loop {
        let mut normals: Vec<Vec<i64>> = Vec::with_capacity(n);
        while normals.len() < n {
            let v = draw(rng, ell);
            if !normals.iter().any(|w| parallel(w, &v)) {
                normals.push(v);
            }
        }
        let rows: Vec<&[i64]> = normals.iter().map(|v| v.as_slice()).collect();
        let a = Arrangement::from_i64(ell, &rows).expect("nonzero distinct normals");
        if a.rank() == ell {
            return a;
        }
    }
}

/// Like [`random_arrangement`], additionally generic in codimension 2.
pub fn random_generic(rng: &mut ChaCha8Rng, ell: usize, n: usize) -> Arrangement {
    loop {
        let a = random_arrangement(rng, ell, n);
        if Lattice::new(&a).is_generic_codim2() {
            return a;
        }
    }
}

/// `count` arrangements in `R^3` with `3 <= n <= max_n`, reproducible from `seed`.
pub fn sample(seed: u64, count: usize, max_n: usize, generic: bool) -> Vec<Arrangement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(3..=max_n);
            if generic {
                random_generic(&mut rng, 3, n)
            } else {
                random_arrangement(&mut rng, 3, n)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_is_reproducible() {
        let a: Vec<String> = sample(7, 5, 8, true).iter().map(|a| a.hash()).collect();
        let b: Vec<String> = sample(7, 5, 8, true).iter().map(|a| a.hash()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn generic_samples_are_generic() {
        for a in sample(1, 10, 8, true) {
            assert!(Lattice::new(&a).is_generic_codim2());
            assert_eq!(a.rank(), 3);
        }
    }
}
