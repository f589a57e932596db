use rand::Rng;

use crate::motif::{MotifCoords, SearchSpace};

use super::Particle;

pub type Position = [f64; 4];

/// Draws a continuous position `(a, w_a, b, w_b)`.
///
/// Lengths are uniform over `[w_min, w_max + 1)`. The first start follows
/// the `1 - sqrt(u)` transform so that `(a, b)` pairs cover the triangular
/// feasible region uniformly, and the second start is uniform over the
/// room left after the first segment. Extreme draws can still fall outside
/// the space; callers filter with [`SearchSpace::floor`].
pub fn sample_position<R: Rng + ?Sized>(space: &SearchSpace, rng: &mut R) -> Position {
    let n = space.n as f64;
    let w_min = space.w_min as f64;
    let span = (space.w_max + 1 - space.w_min) as f64;

    let x2 = w_min + span * rng.random::<f64>();
    let x4 = if space.equal_lengths {
        x2
    } else if let Some(stretch) = space.max_stretch {
        let w2 = x2.floor() as usize;
        let lo = w2.saturating_sub(stretch).max(space.w_min);
        let hi = (w2 + stretch).min(space.w_max);
        lo as f64 + (hi + 1 - lo) as f64 * rng.random::<f64>()
    } else {
        w_min + span * rng.random::<f64>()
    };
    let x1 = 1.0 + (n - x2) * (1.0 - rng.random::<f64>().sqrt());
    let x3 = x1 + x2 + 1.0 + (n - x4 - (x1 + x2)) * rng.random::<f64>();
    [x1, x2, x3, x4]
}

/// Fresh particle: position, velocity towards a second independent draw,
/// infinite personal best.
pub fn new_particle<R: Rng + ?Sized>(space: &SearchSpace, rng: &mut R) -> Particle {
    let x = sample_position(space, rng);
    let v = random_velocity_from(&x, space, rng);
    Particle {
        x,
        v,
        s: f64::INFINITY,
        p: x,
    }
}

fn random_velocity_from<R: Rng + ?Sized>(x: &Position, space: &SearchSpace, rng: &mut R) -> Position {
    let other = sample_position(space, rng);
    std::array::from_fn(|j| other[j] - x[j])
}

/// An initialization-style velocity: the difference of two fresh draws.
pub fn random_velocity<R: Rng + ?Sized>(space: &SearchSpace, rng: &mut R) -> Position {
    let x = sample_position(space, rng);
    random_velocity_from(&x, space, rng)
}

pub fn initialize_swarm<R: Rng + ?Sized>(
    space: &SearchSpace,
    kappa: usize,
    rng: &mut R,
) -> Vec<Particle> {
    (0..kappa).map(|_| new_particle(space, rng)).collect()
}

/// Rejection-samples [`sample_position`] until it floors to a valid motif.
pub fn sample_valid_motif<R: Rng + ?Sized>(space: &SearchSpace, rng: &mut R) -> MotifCoords {
    loop {
        if let Some(m) = space.floor(&sample_position(space, rng)) {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn triangular_transform_endpoints() {
        // x1 = 1 + (n - x2)(1 - sqrt(u)).
        let n = 1000.0;
        let x2 = 50.0;
        let at = |u: f64| 1.0 + (n - x2) * (1.0 - u.sqrt());
        assert_eq!(at(0.0), 1.0 + (n - 50.0));
        assert_eq!(at(0.25), 1.0 + (n - x2) / 2.0);
        assert_eq!(at(1.0), 1.0);
    }

    #[test]
    fn draws_are_almost_always_valid() {
        let space = SearchSpace::new(1000, 50, 60).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let draws = 20_000;
        let valid = (0..draws)
            .filter(|_| space.valid_position(&sample_position(&space, &mut rng)))
            .count();
        // Only draws whose first start leaves no room for the second
        // segment fail; that mass is about (w/(n-w))^2.
        assert!(valid as f64 / draws as f64 > 0.99, "{valid}");
    }

    #[test]
    fn equal_lengths_and_stretch_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let eq = SearchSpace::new(500, 20, 40).unwrap().with_equal_lengths(true);
        let st = SearchSpace::new(500, 20, 40).unwrap().with_max_stretch(Some(2));
        for _ in 0..2000 {
            let x = sample_position(&eq, &mut rng);
            assert_eq!(x[1], x[3]);
            let x = sample_position(&st, &mut rng);
            assert!((x[1].floor() - x[3].floor()).abs() <= 2.0);
            let m = sample_valid_motif(&st, &mut rng);
            assert!(st.contains(&m));
        }
    }

    #[test]
    fn particles_start_with_infinite_best() {
        let space = SearchSpace::new(200, 10, 20).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in initialize_swarm(&space, 30, &mut rng) {
            assert_eq!(p.s, f64::INFINITY);
            assert_eq!(p.p, p.x);
            assert!(p.v.iter().all(|v| v.is_finite()));
        }
    }
}
