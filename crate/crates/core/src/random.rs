//! Seeded generators for random lattice inputs. All randomness in the crate
//! flows through [`Sampler`], so every suite is reproducible from one seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{Point, Polytope};
use crate::lattice::lattice_points;
use crate::linalg;

pub const DEFAULT_SEED: u64 = 42;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent stream derived from `(seed, stream)`, for fanning trials
    /// out across threads deterministically.
    pub fn stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn lattice_point(&mut self, dim: usize, max_coord: i64) -> Point {
        let coords: Vec<i64> = (0..dim).map(|_| self.rng.gen_range(0..=max_coord)).collect();
        Point::from_ints(&coords)
    }

    pub fn translation(&mut self, dim: usize, range: i64) -> Point {
        let coords: Vec<i64> = (0..dim).map(|_| self.rng.gen_range(-range..=range)).collect();
        Point::from_ints(&coords)
    }

    /// Hull of 1 to `max_points` random points of `[0, max_coord]^dim`.
    pub fn lattice_polytope(&mut self, dim: usize, max_coord: i64, max_points: usize) -> Polytope {
        let n = self.rng.gen_range(1..=max_points.max(1));
        let pts: Vec<Point> = (0..n).map(|_| self.lattice_point(dim, max_coord)).collect();
        Polytope::hull(&pts).expect("sampled points share a dimension")
    }

    /// Full-dimensional lattice polytope in `[0, max_coord]^dim`.
    pub fn full_dim_polytope(&mut self, dim: usize, max_coord: i64, max_points: usize) -> Polytope {
        loop {
            let n = self.rng.gen_range(dim + 1..=max_points.max(dim + 1));
            let pts: Vec<Point> = (0..n).map(|_| self.lattice_point(dim, max_coord)).collect();
            let p = Polytope::hull(&pts).expect("sampled points share a dimension");
            if p.dim() == dim {
                return p;
            }
        }
    }

    /// Lattice simplex of dimension `k` in `[0, max_coord]^dim`.
    pub fn lattice_simplex(&mut self, dim: usize, k: usize, max_coord: i64) -> Polytope {
        assert!(k <= dim);
        loop {
            let pts: Vec<Point> = (0..=k).map(|_| self.lattice_point(dim, max_coord)).collect();
            let dirs: Vec<_> = pts[1..].iter().map(|p| p.sub(&pts[0])).collect();
            if linalg::rank(&dirs) == k {
                return Polytope::hull(&pts).expect("sampled points share a dimension");
            }
        }
    }

    /// Hull of a random nonempty subset of the lattice points of `q`.
    pub fn lattice_subpolytope(&mut self, q: &Polytope) -> Polytope {
        let pts = lattice_points(q);
        let k = self.rng.gen_range(1..=pts.len().min(6));
        let chosen: Vec<Point> = pts.choose_multiple(&mut self.rng, k).cloned().collect();
        Polytope::hull(&chosen).expect("subset of lattice points is nonempty")
    }

    /// Random primitive-ish integer direction with entries in `[-range, range]`,
    /// never zero.
    pub fn direction(&mut self, dim: usize, range: i64) -> Vec<i64> {
        loop {
            let v: Vec<i64> = (0..dim).map(|_| self.rng.gen_range(-range..=range)).collect();
            if v.iter().any(|&x| x != 0) {
                return v;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible() {
        let a = Sampler::new(7).lattice_polytope(3, 3, 5);
        let b = Sampler::new(7).lattice_polytope(3, 3, 5);
        assert_eq!(a, b);
        assert_ne!(
            Sampler::stream(7, 1).lattice_point(3, 100),
            Sampler::stream(7, 2).lattice_point(3, 100)
        );
    }

    #[test]
    fn simplex_dimension() {
        let mut s = Sampler::new(1);
        for k in 0..=3 {
            let p = s.lattice_simplex(3, k, 3);
            assert_eq!(p.dim(), k);
            assert!(p.is_simplex());
        }
    }
}
