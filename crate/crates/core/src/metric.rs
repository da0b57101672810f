//! Metric groups: finite abelian groups with a quadratic form into the
//! roots of unity. Nondegenerate forms generate pointed modular data,
//! which the test suites use as an independent source of ground truth.
//!
//! A form on `A = ℤ_{f₁} × ... × ℤ_{f_s}` is specified by diagonal
//! coefficients `c_i` (with `c_i·f_i` even, so each summand is well-defined
//! on its cyclic factor) and cross coefficients `b_{ij}`. With
//! `m = 2·lcm(f)` the value exponents are
//! `Q(a) = Σ c_i a_i²·m/(2f_i) + Σ_{i<j} b_{ij} a_i a_j·m/gcd(f_i,f_j)`
//! modulo `m`, and `q(a) = ζ_m^{Q(a)}`. The associated bilinear form is
//! `b(a,b) = q(a+b)/(q(a)q(b))`, tracked exactly as exponents.

use num_complex::Complex64 as Complex;

use crate::cyclotomic::root_of_unity;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::modular::{ModularData, DEFAULT_TOLERANCE};

#[derive(Clone, Debug)]
pub struct MetricGroup {
    group: FiniteGroup,
    factors: Vec<u64>,
    modulus: u64,
    /// `Q(a)` as an exponent of `ζ_modulus`, per element index.
    qexp: Vec<u64>,
}

impl MetricGroup {
    /// Builds the metric group for the given cyclic factors and form
    /// coefficients. `cross` entries are `(i, j, b_ij)` with `i < j`;
    /// omitted pairs are zero.
    pub fn from_quadratic_form(
        factors: &[u64],
        diag: &[i64],
        cross: &[(usize, usize, i64)],
    ) -> Result<Self> {
        if factors.iter().any(|&f| f == 0) {
            return Err(Error::Input("cyclic factors must be positive".into()));
        }
        if diag.len() != factors.len() {
            return Err(Error::Input(format!(
                "{} diagonal coefficients for {} factors",
                diag.len(),
                factors.len()
            )));
        }
        let s = factors.len();
        let lcm_all = factors.iter().fold(1u64, |acc, &f| lcm(acc, f));
        let modulus = 2 * lcm_all;
        // Reduce diagonal coefficients modulo 2f and enforce well-definedness
        // on each factor.
        let mut c = Vec::with_capacity(s);
        for (i, (&ci, &fi)) in diag.iter().zip(factors).enumerate() {
            let reduced = ci.rem_euclid(2 * fi as i64) as u64;
            if reduced * fi % 2 != 0 {
                return Err(Error::Input(format!(
                    "diagonal coefficient {ci} on a ℤ_{fi} factor (index {i}) does not \
                     give a well-defined form: c·f must be even"
                )));
            }
            c.push(reduced);
        }
        let mut b = vec![vec![0u64; s]; s];
        for &(i, j, bij) in cross {
            if i >= j || j >= s {
                return Err(Error::Input(format!(
                    "cross coefficient indices ({i},{j}) must satisfy i < j < {s}"
                )));
            }
            let g = gcd(factors[i], factors[j]);
            b[i][j] = bij.rem_euclid(g as i64) as u64;
        }
        let group = FiniteGroup::abelian(factors);
        let n = group.order();
        let mut strides = vec![1usize; s];
        for t in (0..s.saturating_sub(1)).rev() {
            strides[t] = strides[t + 1] * factors[t + 1] as usize;
        }
        let coords = |index: usize| -> Vec<u64> {
            (0..s)
                .map(|t| (index / strides[t]) as u64 % factors[t])
                .collect()
        };
        let mut qexp = Vec::with_capacity(n);
        for a in 0..n {
            let av = coords(a);
            let mut e: u64 = 0;
            for i in 0..s {
                e = (e + c[i] * av[i] % modulus * av[i] % modulus * (modulus / (2 * factors[i])))
                    % modulus;
            }
            for i in 0..s {
                for j in (i + 1)..s {
                    if b[i][j] != 0 {
                        let g = gcd(factors[i], factors[j]);
                        e = (e + b[i][j] * av[i] % modulus * av[j] % modulus * (modulus / g))
                            % modulus;
                    }
                }
            }
            qexp.push(e);
        }
        let mg = MetricGroup {
            group,
            factors: factors.to_vec(),
            modulus,
            qexp,
        };
        mg.check_invariants()?;
        Ok(mg)
    }

    /// Evenness under negation and bilinearity of the associated form are
    /// guaranteed by construction; verify them exactly anyway so a future
    /// formula regression cannot slip through.
    fn check_invariants(&self) -> Result<()> {
        let n = self.order();
        let g = &self.group;
        for a in 0..n {
            if self.qexp[g.inv(a)] != self.qexp[a] {
                return Err(Error::Internal(format!(
                    "Q(-a) differs from Q(a) at element {a}"
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.bilinear_exponent(g.mul(a, b), c);
                    let rhs =
                        (self.bilinear_exponent(a, c) + self.bilinear_exponent(b, c)) % self.modulus;
                    if lhs != rhs {
                        return Err(Error::Internal(format!(
                            "associated form is not bilinear at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Exponent of `q(a)` over `ζ_modulus`.
    pub fn q_exponent(&self, a: usize) -> u64 {
        self.qexp[a]
    }

    pub fn theta(&self, a: usize) -> Complex {
        root_of_unity(self.modulus, self.qexp[a] as i64)
    }

    /// Exponent of `b(a,b) = q(a+b)/(q(a)q(b))`.
    pub fn bilinear_exponent(&self, a: usize, b: usize) -> u64 {
        let sum = self.qexp[self.group.mul(a, b)];
        (sum + 2 * self.modulus - self.qexp[a] - self.qexp[b]) % self.modulus
    }

    /// Whether `b(a,·)` is trivial only for `a = 0` (checked exactly on
    /// exponents).
    pub fn is_nondegenerate(&self) -> bool {
        let n = self.order();
        let e = self.group.identity();
        (0..n)
            .filter(|&a| a != e)
            .all(|a| (0..n).any(|b| self.bilinear_exponent(a, b) != 0))
    }

    /// Nondegenerate with no nonzero isotropic element (`Q(a) = 0` only at
    /// the identity).
    pub fn is_elliptic(&self) -> bool {
        let e = self.group.identity();
        self.is_nondegenerate()
            && (0..self.order()).all(|a| a == e || self.qexp[a] != 0)
    }
}

/// Pointed modular data of a nondegenerate metric group:
/// `S̃_{ab} = b(a,b)⁻¹`, `θ_a = q(a)`.
///
/// The pairing enters with inverted orientation (equivalently, paired
/// against the dual of the column label). With `θ = q` this is the
/// orientation whose data satisfies `(st)³ = (p₊/√D)s²`; the balancing
/// equation forces it, since `θ_a⁻¹θ_b⁻¹θ_{a-b} = b(a,b)⁻¹`. The opposite
/// orientation would satisfy the relation with `p₋` instead. The two only
/// differ when `b` takes non-real values (the smallest case is order 3).
pub fn metric_group_data(mg: &MetricGroup) -> Result<ModularData> {
    if !mg.is_nondegenerate() {
        return Err(Error::Unsatisfiable(
            "quadratic form is degenerate: its data would fail unitarity".into(),
        ));
    }
    let n = mg.order();
    let m = mg.modulus();
    let s = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| root_of_unity(m, -(mg.bilinear_exponent(a, b) as i64)))
                .collect()
        })
        .collect();
    let t = (0..n).map(|a| mg.theta(a)).collect();
    ModularData::new(s, t, DEFAULT_TOLERANCE)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_form;
    use crate::fixtures;
    use crate::modular::{verify_modular, verlinde_fusion};
    use crate::ring::pointed_ring;

    #[test]
    fn trivial_group_gives_rank_one_data() {
        let mg = MetricGroup::from_quadratic_form(&[1], &[0], &[]).unwrap();
        assert!(mg.is_nondegenerate());
        let md = metric_group_data(&mg).unwrap();
        assert_eq!(md.rank(), 1);
        assert!(verify_modular(&md).is_valid());
    }

    #[test]
    fn z2_with_quarter_twist_is_the_semion() {
        let mg = MetricGroup::from_quadratic_form(&[2], &[1], &[]).unwrap();
        assert_eq!(mg.modulus(), 4);
        let md = metric_group_data(&mg).unwrap();
        let semion = fixtures::semion_data();
        for i in 0..2 {
            assert!((md.t()[i] - semion.t()[i]).norm() < 1e-12);
            for j in 0..2 {
                assert!((md.s()[i][j] - semion.s()[i][j]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn anisotropic_form_on_z3_squared_is_elliptic() {
        let mg = MetricGroup::from_quadratic_form(&[3, 3], &[2, 2], &[]).unwrap();
        assert!(mg.is_elliptic());
        let md = metric_group_data(&mg).unwrap();
        assert_eq!(md.rank(), 9);
        let report = verify_modular(&md);
        assert!(report.is_valid(), "{report:?}");
        assert!((report.d_global - 9.0).abs() < 1e-9);
    }

    #[test]
    fn hyperbolic_form_has_isotropic_vectors_but_still_verifies() {
        // Q(a₁,a₂) = a₁a₂ on ℤ₃×ℤ₃ vanishes on both axes: nondegenerate,
        // not elliptic.
        let mg = MetricGroup::from_quadratic_form(&[3, 3], &[0, 0], &[(0, 1, 1)]).unwrap();
        assert!(mg.is_nondegenerate());
        assert!(!mg.is_elliptic());
        assert!(verify_modular(&metric_group_data(&mg).unwrap()).is_valid());
    }

    #[test]
    fn degenerate_and_ill_defined_forms_are_rejected() {
        // Zero form on Z2: b ≡ 1, degenerate.
        let mg = MetricGroup::from_quadratic_form(&[2], &[0], &[]).unwrap();
        assert!(!mg.is_nondegenerate());
        let err = metric_group_data(&mg).unwrap_err();
        assert!(matches!(err, Error::Unsatisfiable(_)));
        // c·f odd is not well-defined on ℤ₃.
        assert!(MetricGroup::from_quadratic_form(&[3], &[1], &[]).is_err());
        // Shape errors.
        assert!(MetricGroup::from_quadratic_form(&[2, 2], &[1], &[]).is_err());
        assert!(MetricGroup::from_quadratic_form(&[2, 2], &[1, 1], &[(1, 0, 1)]).is_err());
    }

    #[test]
    fn verlinde_ring_is_the_pointed_group_ring() {
        for (factors, diag, cross) in [
            (vec![2u64], vec![1i64], vec![]),
            (vec![4], vec![1], vec![]),
            (vec![3, 3], vec![2, 2], vec![]),
            (vec![2, 4], vec![1, 1], vec![(0usize, 1usize, 1i64)]),
        ] {
            let mg = MetricGroup::from_quadratic_form(&factors, &diag, &cross).unwrap();
            if !mg.is_nondegenerate() {
                continue;
            }
            let md = metric_group_data(&mg).unwrap();
            let ring = verlinde_fusion(&md).unwrap();
            let expected = pointed_ring(&FiniteGroup::abelian(&factors));
            assert_eq!(
                canonical_form(&ring).unwrap().key,
                canonical_form(&expected).unwrap().key,
                "factors {factors:?}"
            );
        }
    }
}
