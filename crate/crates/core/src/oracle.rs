//! Independent checks: exhaustive root search over a bounded box of
//! polynomial quaternions, and seeded generation of instances with a planted root.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf2k::Fq;
use crate::poly::Poly;
use crate::quat::{QuatAlgebra, Quaternion};
use crate::ratfun::RatFun;

/// Largest degree bound accepted by [`brute_roots`] (2^16 elements for GF(2)).
pub const MAX_BOX_DEGREE: u32 = 3;

/// All quaternions whose coordinates are GF(2)-polynomials of degree <= `degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumBox {
    pub degree: u32,
}

impl EnumBox {
    pub fn new(degree: u32) -> Result<Self> {
        if degree > MAX_BOX_DEGREE {
            return Err(Error::BoxTooLarge(degree));
        }
        Ok(EnumBox { degree })
    }

    pub fn len(&self) -> u64 {
        1 << (4 * (self.degree + 1))
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The element with enumeration index `idx`; coordinate i takes bits
    /// `[i*(D+1), (i+1)*(D+1))` of the index.
    pub fn element(&self, field: Fq, idx: u64) -> Quaternion {
        let w = self.degree + 1;
        let mask = (1u64 << w) - 1;
        Quaternion::new(std::array::from_fn(|i| {
            RatFun::from_poly(Poly::from_gf2_mask(field, idx >> (i as u32 * w) & mask))
        }))
    }
}

fn is_root(alg: &QuatAlgebra, mu: &Quaternion, nu: &Quaternion, z: &Quaternion) -> bool {
    let lhs = &alg.mul(z, z) + &alg.mul(mu, z);
    &lhs == nu
}

/// Every element of the box satisfying `z^2 + mu z + nu = 0`, in enumeration order.
pub fn brute_roots(
    alg: &QuatAlgebra,
    mu: &Quaternion,
    nu: &Quaternion,
    degree: u32,
) -> Result<Vec<Quaternion>> {
    let bx = EnumBox::new(degree)?;
    let field = alg.field();
    let total = bx.len();
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8) as u64;
    if total < 4096 || workers == 1 {
        return Ok((0..total)
            .map(|i| bx.element(field, i))
            .filter(|z| is_root(alg, mu, nu, z))
            .collect());
    }
    let chunk = total.div_ceil(workers);
    let parts: Vec<Vec<Quaternion>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let lo = w * chunk;
                let hi = ((w + 1) * chunk).min(total);
                s.spawn(move || {
                    (lo..hi)
                        .map(|i| bx.element(field, i))
                        .filter(|z| is_root(alg, mu, nu, z))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    Ok(parts.into_iter().flatten().collect())
}

/// Coefficient class requested from [`roundtrip_instance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceCase {
    Zero,
    CentralNonzero,
    SquareCentral,
    /// Trace exactly 1.
    ArtinSchreier,
    /// Nonzero trace, usually not 1.
    General,
}

impl InstanceCase {
    pub const ALL: [InstanceCase; 5] = [
        InstanceCase::ArtinSchreier,
        InstanceCase::SquareCentral,
        InstanceCase::CentralNonzero,
        InstanceCase::Zero,
        InstanceCase::General,
    ];
}

pub fn random_poly(rng: &mut impl Rng, field: Fq, degree: u32) -> Poly {
    let coeffs: Vec<_> = (0..=degree)
        .map(|_| field.elem(rng.gen_range(0..field.order()) as u32))
        .collect();
    Poly::from_coeffs(field, &coeffs)
}

pub fn random_nonzero_poly(rng: &mut impl Rng, field: Fq, degree: u32) -> Poly {
    loop {
        let p = random_poly(rng, field, degree);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_scalar(rng: &mut impl Rng, field: Fq, degree: u32) -> RatFun {
    RatFun::from_poly(random_poly(rng, field, degree))
}

/// Random element with polynomial coordinates of degree <= `degree`.
pub fn random_quaternion(rng: &mut impl Rng, field: Fq, degree: u32) -> Quaternion {
    Quaternion::new(std::array::from_fn(|_| random_scalar(rng, field, degree)))
}

/// Random element of the requested class.
pub fn random_of_case(rng: &mut impl Rng, field: Fq, case: InstanceCase, degree: u32) -> Quaternion {
    let b = match case {
        InstanceCase::Zero => return Quaternion::central(RatFun::zero(field)),
        InstanceCase::CentralNonzero => {
            return Quaternion::central(RatFun::from_poly(random_nonzero_poly(rng, field, degree)))
        }
        InstanceCase::SquareCentral => RatFun::zero(field),
        InstanceCase::ArtinSchreier => RatFun::one(field),
        InstanceCase::General => RatFun::from_poly(random_nonzero_poly(rng, field, degree)),
    };
    loop {
        let a = random_scalar(rng, field, degree);
        let c = random_scalar(rng, field, degree);
        let d = random_scalar(rng, field, degree);
        let q = Quaternion::new([a, b.clone(), c, d]);
        if !q.is_central() {
            return q;
        }
    }
}

/// `(mu, nu, z0)` with `mu` of the requested class, `z0` random and
/// `nu = z0^2 + mu z0`, so `z0` is a root. Deterministic in `seed`.
pub fn roundtrip_instance(
    alg: &QuatAlgebra,
    case: InstanceCase,
    seed: u64,
    degree: u32,
) -> (Quaternion, Quaternion, Quaternion) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let field = alg.field();
    let mu = random_of_case(&mut rng, field, case, degree);
    let z0 = random_quaternion(&mut rng, field, degree);
    let nu = &alg.mul(&z0, &z0) + &alg.mul(&mu, &z0);
    (mu, nu, z0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::ElementClass;

    fn alg() -> QuatAlgebra {
        QuatAlgebra::standard(Fq::gf2(), 3).unwrap()
    }

    #[test]
    fn box_size_and_guard() {
        assert_eq!(EnumBox::new(1).unwrap().len(), 256);
        assert!(matches!(EnumBox::new(4), Err(Error::BoxTooLarge(4))));
    }

    #[test]
    fn brute_examples() {
        let h = alg();
        let nu = &h.square(&h.y()) + &h.mul(&h.x(), &h.y());
        assert!(brute_roots(&h, &h.x(), &nu, 1).unwrap().contains(&h.y()));
        assert_eq!(brute_roots(&h, &h.zero(), &h.zero(), 1).unwrap(), vec![h.zero()]);
        let t = Quaternion::central(RatFun::t(h.field()));
        assert!(brute_roots(&h, &h.one(), &t, 1).unwrap().contains(&h.x()));
    }

    #[test]
    fn threaded_enumeration_matches_sequential_order() {
        let h = alg();
        let nu = &h.square(&h.y()) + &h.mul(&h.x(), &h.y());
        let roots = brute_roots(&h, &h.x(), &nu, 2).unwrap();
        let bx = EnumBox::new(2).unwrap();
        let seq: Vec<_> = (0..bx.len())
            .map(|i| bx.element(h.field(), i))
            .filter(|z| is_root(&h, &h.x(), &nu, z))
            .collect();
        assert_eq!(roots, seq);
    }

    #[test]
    fn instances_have_requested_class() {
        let h = alg();
        for seed in 0..50 {
            let (mu, nu, z0) = roundtrip_instance(&h, InstanceCase::SquareCentral, seed, 2);
            assert_eq!(h.classify(&mu), ElementClass::SquareCentral);
            assert!(is_root(&h, &mu, &nu, &z0));
            let (mu, _, _) = roundtrip_instance(&h, InstanceCase::General, seed, 2);
            assert!(matches!(h.classify(&mu), ElementClass::General { .. }));
            let (mu, _, _) = roundtrip_instance(&h, InstanceCase::ArtinSchreier, seed, 2);
            assert!(h.is_artin_schreier(&mu));
        }
        assert_eq!(
            roundtrip_instance(&h, InstanceCase::General, 7, 2),
            roundtrip_instance(&h, InstanceCase::General, 7, 2)
        );
    }
}
