//! Verification of candidate modular data (S̃, T): axiom checks with
//! residuals, Verlinde reconstruction of the fusion ring, twist equation,
//! Gauss sums, Müger centralizers, the fusion sub-basis lattice, and the
//! group-theoreticity certificate search.
//!
//! `S̃` is the unnormalized S-matrix (`S̃₀₀ = 1`, first row = dimensions);
//! `T` is the diagonal of twists. All comparisons are tolerance-based on
//! complex floats; exact root-of-unity input is evaluated at load time.

use num_complex::Complex64 as Complex;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::RootSum;
use crate::error::{Error, Result};
use crate::ring::{
    adjoint_of, fp_dimensions, DimensionVector, FusionRing, SubBasis,
};

/// Default absolute tolerance for modular-data comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Default bound on the distance of Verlinde coefficients from integers.
pub const VERLINDE_RESIDUAL_BOUND: f64 = 1e-6;
/// Largest twist-matrix order searched for.
pub const TWIST_ORDER_CAP: u64 = 10_000;
/// Largest rank for which the sub-basis lattice is enumerated by default.
pub const LATTICE_RANK_CAP: usize = 16;

#[derive(Clone, Debug)]
pub struct ModularData {
    s: Vec<Vec<Complex>>,
    t: Vec<Complex>,
    tolerance: f64,
}

impl ModularData {
    pub fn new(s: Vec<Vec<Complex>>, t: Vec<Complex>, tolerance: f64) -> Result<Self> {
        let n = t.len();
        if n == 0 {
            return Err(Error::Input("modular data needs at least one object".into()));
        }
        if s.len() != n || s.iter().any(|row| row.len() != n) {
            return Err(Error::Input(format!(
                "S must be {n}×{n} to match the {n} twists"
            )));
        }
        if !(tolerance > 0.0) {
            return Err(Error::Input("tolerance must be positive".into()));
        }
        Ok(ModularData { s, t, tolerance })
    }

    pub fn rank(&self) -> usize {
        self.t.len()
    }

    pub fn s(&self) -> &[Vec<Complex>] {
        &self.s
    }

    pub fn t(&self) -> &[Complex] {
        &self.t
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Dimension vector read off the first S̃ row.
    pub fn dims(&self) -> Vec<f64> {
        self.s[0].iter().map(|z| z.re).collect()
    }

    /// Global dimension `D = Σᵢ S̃₀ᵢ²`.
    pub fn d_global(&self) -> f64 {
        self.s[0].iter().map(|z| z.norm_sqr()).sum()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ModularCheckKind {
    Symmetry,
    DimensionRow,
    Unitarity,
    VerlindeIntegrality,
    TwistDiagonal,
    TwistOrder,
    GaussSumProduct,
    ModularRelation,
}

impl std::fmt::Display for ModularCheckKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            ModularCheckKind::Symmetry => "symmetry",
            ModularCheckKind::DimensionRow => "dimension-row",
            ModularCheckKind::Unitarity => "unitarity",
            ModularCheckKind::VerlindeIntegrality => "verlinde-integrality",
            ModularCheckKind::TwistDiagonal => "twist-diagonal",
            ModularCheckKind::TwistOrder => "twist-order",
            ModularCheckKind::GaussSumProduct => "gauss-sum-product",
            ModularCheckKind::ModularRelation => "modular-relation",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ModularCheck {
    pub kind: ModularCheckKind,
    pub passed: bool,
    pub residual: f64,
    pub detail: Option<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct GaussSums {
    pub p_plus: Complex,
    pub p_minus: Complex,
}

#[derive(Clone, Debug)]
pub struct ModularReport {
    pub checks: Vec<ModularCheck>,
    pub d_global: f64,
    /// Smallest `m` with `T^m = 1`, when one exists below the cap.
    pub t_order: Option<u64>,
    pub gauss: GaussSums,
}

impl ModularReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, kind: ModularCheckKind) -> &ModularCheck {
        self.checks
            .iter()
            .find(|c| c.kind == kind)
            .expect("all kinds reported")
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.residual).fold(0.0, f64::max)
    }
}

fn mat_mul(a: &[Vec<Complex>], b: &[Vec<Complex>]) -> Vec<Vec<Complex>> {
    let n = a.len();
    let mut out = vec![vec![Complex::new(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

/// Runs every modular-data check with the default Verlinde bound.
pub fn verify_modular(md: &ModularData) -> ModularReport {
    verify_modular_with(md, VERLINDE_RESIDUAL_BOUND)
}

pub fn verify_modular_with(md: &ModularData, verlinde_bound: f64) -> ModularReport {
    let n = md.rank();
    let tol = md.tolerance;
    let mut checks = Vec::with_capacity(8);

    // Symmetry.
    let mut res = 0f64;
    for i in 0..n {
        for j in 0..i {
            res = res.max((md.s[i][j] - md.s[j][i]).norm());
        }
    }
    checks.push(ModularCheck {
        kind: ModularCheckKind::Symmetry,
        passed: res <= tol,
        residual: res,
        detail: None,
    });

    // Dimension row: S̃₀₀ = 1, row real and strictly positive.
    let mut res = (md.s[0][0] - Complex::new(1.0, 0.0)).norm();
    let mut detail = None;
    for (i, z) in md.s[0].iter().enumerate() {
        res = res.max(z.im.abs());
        if z.re <= 0.0 {
            res = res.max(z.re.abs().max(1.0));
            detail.get_or_insert_with(|| format!("S̃[0][{i}] = {z} is not positive"));
        }
    }
    checks.push(ModularCheck {
        kind: ModularCheckKind::DimensionRow,
        passed: res <= tol,
        residual: res,
        detail,
    });

    // Unitarity of s = S̃/√D.
    let d_global = md.d_global();
    let sqrt_d = d_global.sqrt();
    let s_norm: Vec<Vec<Complex>> = md
        .s
        .iter()
        .map(|row| row.iter().map(|z| z / sqrt_d).collect())
        .collect();
    let s_dagger: Vec<Vec<Complex>> = (0..n)
        .map(|i| (0..n).map(|j| s_norm[j][i].conj()).collect())
        .collect();
    let prod = mat_mul(&s_norm, &s_dagger);
    let mut res = 0f64;
    for i in 0..n {
        for j in 0..n {
            let expect = Complex::new(f64::from(u8::from(i == j)), 0.0);
            res = res.max((prod[i][j] - expect).norm());
        }
    }
    checks.push(ModularCheck {
        kind: ModularCheckKind::Unitarity,
        passed: res <= tol,
        residual: res,
        detail: None,
    });

    // Verlinde integrality.
    let (res, neg) = verlinde_worst(md, &s_norm);
    checks.push(ModularCheck {
        kind: ModularCheckKind::VerlindeIntegrality,
        passed: res <= verlinde_bound && neg.is_none(),
        residual: res,
        detail: neg.map(|(i, j, k, v)| {
            format!("N[{i}][{j}][{k}] evaluates to negative {v:.6}")
        }),
    });

    // Twist diagonal: θ₀ = 1 and all |θ| = 1.
    let mut res = (md.t[0] - Complex::new(1.0, 0.0)).norm();
    for z in &md.t {
        res = res.max((z.norm() - 1.0).abs());
    }
    checks.push(ModularCheck {
        kind: ModularCheckKind::TwistDiagonal,
        passed: res <= tol,
        residual: res,
        detail: None,
    });

    // Finite order of T.
    let t_order = twist_order(&md.t, tol.max(1e-12));
    checks.push(ModularCheck {
        kind: ModularCheckKind::TwistOrder,
        passed: t_order.is_some(),
        residual: 0.0,
        detail: Some(match t_order {
            Some(m) => format!("T^{m} = 1"),
            None => format!("no order ≤ {TWIST_ORDER_CAP} found"),
        }),
    });

    // Gauss sums and their product.
    let dims = md.dims();
    let mut p_plus = Complex::new(0.0, 0.0);
    let mut p_minus = Complex::new(0.0, 0.0);
    for (k, &theta) in md.t.iter().enumerate() {
        let d2 = dims[k] * dims[k];
        p_plus += theta * d2;
        p_minus += theta.conj() * d2;
    }
    let gauss = GaussSums { p_plus, p_minus };
    let res = (p_plus * p_minus - Complex::new(d_global, 0.0)).norm();
    checks.push(ModularCheck {
        kind: ModularCheckKind::GaussSumProduct,
        passed: res <= tol,
        residual: res,
        detail: None,
    });

    // (st)³ = (p₊/√D) s².
    let t_mat: Vec<Vec<Complex>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { md.t[i] } else { Complex::new(0.0, 0.0) })
                .collect()
        })
        .collect();
    let st = mat_mul(&s_norm, &t_mat);
    let st3 = mat_mul(&mat_mul(&st, &st), &st);
    let s2 = mat_mul(&s_norm, &s_norm);
    let scale = p_plus / sqrt_d;
    let mut res = 0f64;
    for i in 0..n {
        for j in 0..n {
            res = res.max((st3[i][j] - scale * s2[i][j]).norm());
        }
    }
    checks.push(ModularCheck {
        kind: ModularCheckKind::ModularRelation,
        passed: res <= tol,
        residual: res,
        detail: None,
    });

    ModularReport {
        checks,
        d_global,
        t_order,
        gauss,
    }
}

/// Worst distance of any Verlinde coefficient from the nearest integer,
/// plus the first negatively rounding triple if one exists.
fn verlinde_worst(
    md: &ModularData,
    s_norm: &[Vec<Complex>],
) -> (f64, Option<(usize, usize, usize, f64)>) {
    let n = md.rank();
    let mut worst = 0f64;
    let mut neg = None;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = verlinde_entry(s_norm, i, j, k);
                let r = v.re.round();
                worst = worst.max((v - Complex::new(r, 0.0)).norm());
                if r < 0.0 && neg.is_none() {
                    neg = Some((i, j, k, v.re));
                }
            }
        }
    }
    (worst, neg)
}

fn verlinde_entry(s_norm: &[Vec<Complex>], i: usize, j: usize, k: usize) -> Complex {
    let n = s_norm.len();
    let mut acc = Complex::new(0.0, 0.0);
    for r in 0..n {
        acc += s_norm[i][r] * s_norm[j][r] * s_norm[k][r].conj() / s_norm[0][r];
    }
    acc
}

/// Smallest `m ≤ cap` with every `θ^m = 1`, via per-entry orders.
fn twist_order(t: &[Complex], tol: f64) -> Option<u64> {
    let mut order = 1u64;
    for theta in t {
        let angle = theta.arg();
        let entry_order = (1..=TWIST_ORDER_CAP).find(|&k| {
            let z = Complex::from_polar(1.0, angle * k as f64);
            (z - Complex::new(1.0, 0.0)).norm() <= tol && (theta.norm() - 1.0).abs() <= tol
        })?;
        order = lcm(order, entry_order);
        if order > TWIST_ORDER_CAP {
            return None;
        }
    }
    Some(order)
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

/// Gauss sums alone (also part of every [`verify_modular`] report).
pub fn gauss_sums(md: &ModularData) -> GaussSums {
    let dims = md.dims();
    let mut p_plus = Complex::new(0.0, 0.0);
    let mut p_minus = Complex::new(0.0, 0.0);
    for (k, &theta) in md.t.iter().enumerate() {
        let d2 = dims[k] * dims[k];
        p_plus += theta * d2;
        p_minus += theta.conj() * d2;
    }
    GaussSums { p_plus, p_minus }
}

/// Reconstructs the fusion ring from unitary modular data with the default
/// integrality bound.
pub fn verlinde_fusion(md: &ModularData) -> Result<FusionRing> {
    verlinde_fusion_with(md, VERLINDE_RESIDUAL_BOUND)
}

pub fn verlinde_fusion_with(md: &ModularData, bound: f64) -> Result<FusionRing> {
    let n = md.rank();
    let sqrt_d = md.d_global().sqrt();
    let s_norm: Vec<Vec<Complex>> = md
        .s
        .iter()
        .map(|row| row.iter().map(|z| z / sqrt_d).collect())
        .collect();
    let mut tensor = vec![0u64; n * n * n];
    // Track the worst offender so the failure message names the extreme
    // case rather than the first one encountered.
    let mut worst: Option<(f64, usize, usize, usize, f64)> = None;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let v = verlinde_entry(&s_norm, i, j, k);
                let r = v.re.round();
                let residual = (v - Complex::new(r, 0.0)).norm();
                let offending = r < 0.0 || residual > bound;
                if offending && worst.map_or(true, |w| residual > w.0) {
                    worst = Some((residual, i, j, k, v.re));
                }
                tensor[(i * n + j) * n + k] = if r < 0.0 { 0 } else { r as u64 };
            }
        }
    }
    if let Some((residual, i, j, k, value)) = worst {
        return Err(Error::NonIntegralFusion {
            i,
            j,
            k,
            value,
            residual,
        });
    }
    // Duals from the unit column.
    let mut dual = vec![usize::MAX; n];
    for i in 0..n {
        for j in 0..n {
            if tensor[(i * n + j) * n] == 1 {
                if dual[i] != usize::MAX {
                    return Err(Error::Unsatisfiable(format!(
                        "object {i} has two dual partners in the reconstructed ring"
                    )));
                }
                dual[i] = j;
            }
        }
        if dual[i] == usize::MAX {
            return Err(Error::Unsatisfiable(format!(
                "object {i} has no dual partner in the reconstructed ring"
            )));
        }
    }
    let labels = (0..n).map(|i| format!("s{i}")).collect();
    let ring = FusionRing::from_dense(labels, dual, tensor)?;
    let validation = ring.validate();
    if let Some(failure) = validation.first_failure() {
        let detail = failure
            .violation
            .as_ref()
            .map(|v| v.detail.clone())
            .unwrap_or_default();
        return Err(Error::Unsatisfiable(format!(
            "reconstructed multiplicities violate the {} axiom: {detail}",
            failure.axiom
        )));
    }
    Ok(ring)
}

/// Max residual of the twist equation
/// `S̃ᵢⱼ = θᵢ⁻¹θⱼ⁻¹ Σ_k N[i][j*][k]·θ_k·d_k` over all pairs.
pub fn twist_equation_check(md: &ModularData, ring: &FusionRing) -> Result<f64> {
    let n = md.rank();
    if ring.rank() != n {
        return Err(Error::Input(format!(
            "ring rank {} does not match modular data rank {n}",
            ring.rank()
        )));
    }
    let dims = md.dims();
    let mut res = 0f64;
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex::new(0.0, 0.0);
            for k in 0..n {
                let m = ring.n(i, ring.dual_of(j), k);
                if m > 0 {
                    acc += md.t[k] * (m as f64 * dims[k]);
                }
            }
            let rhs = acc / (md.t[i] * md.t[j]);
            res = res.max((md.s[i][j] - rhs).norm());
        }
    }
    Ok(res)
}

/// Every fusion- and dual-closed sub-basis of `ring`, ascending by size
/// then lexicographically.
pub fn fusion_subcategory_lattice(ring: &FusionRing) -> Result<Vec<SubBasis>> {
    fusion_subcategory_lattice_with_cap(ring, LATTICE_RANK_CAP)
}

/// The lattice is found by closing single-generator extensions breadth-
/// first from the unit sub-basis; every closed sub-basis arises as a chain
/// of such extensions, so the enumeration is complete without touching all
/// 2^rank subsets.
pub fn fusion_subcategory_lattice_with_cap(
    ring: &FusionRing,
    cap: usize,
) -> Result<Vec<SubBasis>> {
    if ring.rank() > cap {
        return Err(Error::Capacity(format!(
            "sub-basis lattice is capped at rank {cap}, got {}",
            ring.rank()
        )));
    }
    let mut seen = std::collections::BTreeSet::new();
    let mut queue = vec![SubBasis::generate(ring, &[])?];
    seen.insert(queue[0].clone());
    while let Some(sub) = queue.pop() {
        for x in 0..ring.rank() {
            if sub.contains(x) {
                continue;
            }
            let mut seeds = sub.indices().to_vec();
            seeds.push(x);
            let bigger = SubBasis::generate(ring, &seeds)?;
            if seen.insert(bigger.clone()) {
                queue.push(bigger);
            }
        }
    }
    let mut lattice: Vec<SubBasis> = seen.into_iter().collect();
    lattice.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.indices().cmp(b.indices())));
    Ok(lattice)
}

/// A witness that the data is group-theoretical: a symmetric sub-basis `L`
/// whose centralizer has its adjoint inside `L`.
#[derive(Clone, Debug)]
pub struct GroupTheoreticalCertificate {
    pub l: SubBasis,
    pub centralizer: SubBasis,
    pub l_fpdim: f64,
    /// Whether every twist on `L` is 1 (the symmetric sub-basis presents as
    /// a representation category candidate).
    pub tannakian: bool,
}

#[derive(Clone, Debug)]
pub enum CertificateOutcome {
    Found(GroupTheoreticalCertificate),
    /// Exhausted the whole lattice: for valid integral modular data this
    /// proves non-group-theoreticity.
    NoneFound {
        lattice_size: usize,
        symmetric_count: usize,
        tannakian_candidates: Vec<SubBasis>,
    },
}

impl CertificateOutcome {
    pub fn found(&self) -> Option<&GroupTheoreticalCertificate> {
        match self {
            CertificateOutcome::Found(c) => Some(c),
            CertificateOutcome::NoneFound { .. } => None,
        }
    }
}

/// All derived analyses of one modular datum: full report, reconstructed
/// ring, and dimensions, plus centralizer/lattice/certificate queries.
#[derive(Clone, Debug)]
pub struct ModularAnalysis {
    pub data: ModularData,
    pub report: ModularReport,
    pub ring: FusionRing,
    pub dims: DimensionVector,
}

impl ModularAnalysis {
    /// Verifies the data and reconstructs its ring. Reconstruction failure
    /// is an error; individual failed checks are left in the report.
    pub fn new(data: ModularData) -> Result<Self> {
        let report = verify_modular(&data);
        let ring = verlinde_fusion(&data)?;
        let dims = fp_dimensions(&ring)?;
        Ok(ModularAnalysis {
            data,
            report,
            ring,
            dims,
        })
    }

    fn centralizer_members(&self, sub: &SubBasis) -> Vec<usize> {
        let n = self.data.rank();
        let dims = self.data.dims();
        let tol = self.data.tolerance();
        (0..n)
            .filter(|&i| {
                sub.indices().iter().all(|&j| {
                    let expect = dims[i] * dims[j];
                    (self.data.s[i][j] - Complex::new(expect, 0.0)).norm()
                        <= tol * expect.abs().max(1.0)
                })
            })
            .collect()
    }

    fn centralizer_set(&self, sub: &SubBasis) -> Result<SubBasis> {
        let members = self.centralizer_members(sub);
        SubBasis::closed(&self.ring, &members).map_err(|e| {
            Error::Internal(format!("centralizer is not a closed sub-basis: {e}"))
        })
    }

    /// Müger centralizer of a closed sub-basis. On data passing every
    /// check, also verifies the dimension product `FPdim(D)·FPdim(D′) = D`
    /// and the double-centralizer identity.
    pub fn centralizer(&self, sub: &SubBasis) -> Result<SubBasis> {
        let sub = SubBasis::closed(&self.ring, sub.indices())?;
        let result = self.centralizer_set(&sub)?;
        if self.report.is_valid() {
            let product = sub.fp_dim(&self.dims) * result.fp_dim(&self.dims);
            let d = self.report.d_global;
            if (product - d).abs() > 1e-6 * d.max(1.0) {
                return Err(Error::Numerical(format!(
                    "centralizer dimension product {product} differs from D = {d}"
                )));
            }
            let back = self.centralizer_set(&result)?;
            if back != sub {
                return Err(Error::Numerical(
                    "double centralizer does not return the original sub-basis".into(),
                ));
            }
        }
        Ok(result)
    }

    pub fn lattice(&self) -> Result<Vec<SubBasis>> {
        fusion_subcategory_lattice(&self.ring)
    }

    pub fn lattice_with_cap(&self, cap: usize) -> Result<Vec<SubBasis>> {
        fusion_subcategory_lattice_with_cap(&self.ring, cap)
    }

    pub fn certificate(&self) -> Result<CertificateOutcome> {
        self.certificate_with_cap(LATTICE_RANK_CAP)
    }

    /// Searches the whole sub-basis lattice, largest candidates first, for
    /// a symmetric `L` with `adjoint(centralizer(L)) ⊆ L`. Largest-first
    /// order reports the most informative witness (for pointed data the
    /// trivial sub-basis would qualify too).
    pub fn certificate_with_cap(&self, cap: usize) -> Result<CertificateOutcome> {
        if self.dims.integral.is_none() {
            return Err(Error::Input(
                "group-theoreticity certificates require integral dimensions".into(),
            ));
        }
        let mut lattice = self.lattice_with_cap(cap)?;
        let lattice_size = lattice.len();
        lattice.sort_by(|a, b| {
            b.len()
                .cmp(&a.len())
                .then_with(|| a.indices().cmp(b.indices()))
        });
        let tol = self.data.tolerance();
        let mut symmetric_count = 0usize;
        let mut tannakian_candidates = Vec::new();
        for l in lattice {
            let centralizer = self.centralizer_set(&l)?;
            if !l.is_subset_of(&centralizer) {
                continue;
            }
            symmetric_count += 1;
            let tannakian = l
                .indices()
                .iter()
                .all(|&i| (self.data.t[i] - Complex::new(1.0, 0.0)).norm() <= tol);
            if tannakian {
                tannakian_candidates.push(l.clone());
            }
            let core = adjoint_of(&self.ring, &centralizer)?;
            if core.is_subset_of(&l) {
                let l_fpdim = l.fp_dim(&self.dims);
                return Ok(CertificateOutcome::Found(GroupTheoreticalCertificate {
                    l,
                    centralizer,
                    l_fpdim,
                    tannakian,
                }));
            }
        }
        tannakian_candidates.sort();
        Ok(CertificateOutcome::NoneFound {
            lattice_size,
            symmetric_count,
            tannakian_candidates,
        })
    }
}

// ---------------------------------------------------------------------------
// Serialization.

#[derive(Serialize, Deserialize)]
struct ComplexRepr {
    re: f64,
    #[serde(default)]
    im: f64,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DataFile {
    Exact {
        root_order: u64,
        #[serde(rename = "S")]
        s: Vec<Vec<RootSum>>,
        #[serde(rename = "T")]
        t: Vec<RootSum>,
        tolerance: Option<f64>,
    },
    Float {
        #[serde(rename = "S")]
        s: Vec<Vec<ComplexRepr>>,
        #[serde(rename = "T")]
        t: Vec<ComplexRepr>,
        tolerance: Option<f64>,
    },
}

impl ModularData {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: DataFile = serde_json::from_str(text)
            .map_err(|e| Error::Input(format!("modular data JSON: {e}")))?;
        match file {
            DataFile::Exact {
                root_order,
                s,
                t,
                tolerance,
            } => {
                let s = s
                    .iter()
                    .map(|row| row.iter().map(|e| e.eval(root_order)).collect())
                    .collect::<Result<Vec<Vec<Complex>>>>()?;
                let t = t
                    .iter()
                    .map(|e| e.eval(root_order))
                    .collect::<Result<Vec<Complex>>>()?;
                ModularData::new(s, t, tolerance.unwrap_or(DEFAULT_TOLERANCE))
            }
            DataFile::Float { s, t, tolerance } => {
                let s = s
                    .into_iter()
                    .map(|row| row.into_iter().map(|z| Complex::new(z.re, z.im)).collect())
                    .collect();
                let t = t.into_iter().map(|z| Complex::new(z.re, z.im)).collect();
                ModularData::new(s, t, tolerance.unwrap_or(DEFAULT_TOLERANCE))
            }
        }
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out {
            #[serde(rename = "S")]
            s: Vec<Vec<ComplexRepr>>,
            #[serde(rename = "T")]
            t: Vec<ComplexRepr>,
            tolerance: f64,
        }
        let out = Out {
            s: self
                .s
                .iter()
                .map(|row| row.iter().map(|z| ComplexRepr { re: z.re, im: z.im }).collect())
                .collect(),
            t: self.t.iter().map(|z| ComplexRepr { re: z.re, im: z.im }).collect(),
            tolerance: self.tolerance,
        };
        serde_json::to_string_pretty(&out).expect("modular data serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_form;
    use crate::fixtures;
    use crate::ring::pointed_ring;

    #[test]
    fn rank_one_data_passes_everything() {
        let md = ModularData::new(
            vec![vec![Complex::new(1.0, 0.0)]],
            vec![Complex::new(1.0, 0.0)],
            DEFAULT_TOLERANCE,
        )
        .unwrap();
        let report = verify_modular(&md);
        assert!(report.is_valid(), "{report:?}");
        assert_eq!(report.d_global, 1.0);
        assert_eq!(report.t_order, Some(1));
        let ring = verlinde_fusion(&md).unwrap();
        assert_eq!(ring.rank(), 1);
        assert_eq!(twist_equation_check(&md, &ring).unwrap(), 0.0);
        let g = gauss_sums(&md);
        assert!((g.p_plus - Complex::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn semion_data() {
        let md = fixtures::semion_data();
        let report = verify_modular(&md);
        assert!(report.is_valid(), "{report:?}");
        assert!((report.d_global - 2.0).abs() < 1e-12);
        assert_eq!(report.t_order, Some(4));
        let g = report.gauss;
        assert!((g.p_plus - Complex::new(1.0, 1.0)).norm() < 1e-12);
        assert!((g.p_minus - Complex::new(1.0, -1.0)).norm() < 1e-12);
        let ring = verlinde_fusion(&md).unwrap();
        assert_eq!(
            canonical_form(&ring).unwrap().key,
            canonical_form(&pointed_ring(&fixtures::z2())).unwrap().key
        );
        assert!(twist_equation_check(&md, &ring).unwrap() < 1e-12);
    }

    #[test]
    fn toric_code_data_and_certificate() {
        let analysis = ModularAnalysis::new(fixtures::toric_code_data()).unwrap();
        assert!(analysis.report.is_valid());
        assert_eq!(
            canonical_form(&analysis.ring).unwrap().key,
            canonical_form(&pointed_ring(&fixtures::z2z2())).unwrap().key
        );
        let outcome = analysis.certificate().unwrap();
        let cert = outcome.found().expect("toric code is group-theoretical");
        assert_eq!(cert.l.len(), 2);
        assert!((cert.l_fpdim - 2.0).abs() < 1e-9);
        assert!(cert.tannakian);
        assert_eq!(cert.centralizer, cert.l);
    }

    #[test]
    fn printed_data_verifies_and_recovers_a_rank10_ring() {
        let analysis = ModularAnalysis::new(fixtures::printed_rank10_data()).unwrap();
        let report = &analysis.report;
        assert!(report.is_valid(), "{report:?}");
        assert!((report.d_global - 36.0).abs() < 1e-9);
        assert_eq!(report.t_order, Some(6));
        assert!((report.gauss.p_plus - Complex::new(-6.0, 0.0)).norm() < 1e-9);
        assert!((report.gauss.p_minus - Complex::new(-6.0, 0.0)).norm() < 1e-9);
        assert!(report.max_residual() < 1e-9);
        // The recovered ring is the second of the two rank-10 rings.
        let key = canonical_form(&analysis.ring).unwrap().key;
        assert_eq!(
            key,
            canonical_form(&fixtures::rank10_ring_ii()).unwrap().key
        );
        assert!(twist_equation_check(&analysis.data, &analysis.ring).unwrap() < 1e-9);
    }

    #[test]
    fn printed_data_centralizers_and_lattice() {
        let analysis = ModularAnalysis::new(fixtures::printed_rank10_data()).unwrap();
        // The centralizer of the pointed part is the adjoint sub-basis.
        let pointed = SubBasis::closed(&analysis.ring, &[0, 1, 2]).unwrap();
        let cent = analysis.centralizer(&pointed).unwrap();
        assert_eq!(cent.indices(), &[0, 1, 2, 3]);
        // Everything centralizes the unit; nothing but the unit centralizes
        // everything.
        let unit = SubBasis::unit();
        assert_eq!(analysis.centralizer(&unit).unwrap().len(), 10);
        let full = SubBasis::closed(&analysis.ring, &(0..10).collect::<Vec<_>>()).unwrap();
        assert_eq!(analysis.centralizer(&full).unwrap().indices(), &[0]);
        // The lattice has exactly four members.
        let lattice = analysis.lattice().unwrap();
        let sizes: Vec<usize> = lattice.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![1, 3, 4, 10]);
    }

    #[test]
    fn printed_data_has_no_certificate() {
        let analysis = ModularAnalysis::new(fixtures::printed_rank10_data()).unwrap();
        match analysis.certificate().unwrap() {
            CertificateOutcome::NoneFound {
                lattice_size,
                symmetric_count,
                tannakian_candidates,
            } => {
                assert_eq!(lattice_size, 4);
                assert!(symmetric_count >= 1); // at least the unit sub-basis
                assert!(tannakian_candidates.iter().any(|l| l.len() == 1));
            }
            CertificateOutcome::Found(c) => panic!("unexpected certificate {c:?}"),
        }
    }

    #[test]
    fn corrupted_data_fails_cleanly() {
        let mut s = fixtures::toric_code_data().s().to_vec();
        s[1][2] = Complex::new(0.5, 0.0); // breaks symmetry and unitarity
        let md = ModularData::new(s, fixtures::toric_code_data().t().to_vec(), 1e-9).unwrap();
        let report = verify_modular(&md);
        assert!(!report.check(ModularCheckKind::Symmetry).passed);
        assert!(!report.check(ModularCheckKind::Unitarity).passed);
        assert!(verlinde_fusion(&md).is_err());
    }

    #[test]
    fn json_round_trip_and_exact_form() {
        let md = fixtures::semion_data();
        let text = md.to_json();
        let back = ModularData::from_json(&text).unwrap();
        assert_eq!(back.rank(), 2);
        assert!((back.s()[1][1] - md.s()[1][1]).norm() < 1e-15);
        // Exact form with a root order.
        let exact = r#"{
            "root_order": 4,
            "S": [[[[1,0]], [[1,0]]], [[[1,0]], [[-1,0]]]],
            "T": [[[1,0]], [[1,1]]],
            "tolerance": 1e-9
        }"#;
        let parsed = ModularData::from_json(exact).unwrap();
        assert!((parsed.s()[1][1] - Complex::new(-1.0, 0.0)).norm() < 1e-15);
        assert!((parsed.t()[1] - Complex::new(0.0, 1.0)).norm() < 1e-15);
        // Shape errors are input errors.
        assert!(ModularData::from_json(r#"{"S": [[{"re":1}]], "T": []}"#).is_err());
    }
}
