//! Complex irreducible character tables of small finite groups.
//!
//! The table is computed by the modular class-sum method: the class-algebra
//! structure constants are diagonalized over a prime field 𝔽_ℓ with
//! ℓ ≡ 1 (mod exponent) and ℓ > 2|G|, the common eigenvectors give the
//! central characters, degrees are recovered from the second orthogonality
//! relation, and the values are lifted to ℂ through the multiplicities of
//! each root of unity in the eigenvalues of a representing matrix. Row
//! orthogonality of the lifted table is verified numerically before the
//! table is returned.

use num_complex::Complex64 as Complex;

use crate::error::{Error, Result};
use crate::group::{Classes, FiniteGroup};

/// Largest group order the character-table constructor accepts.
pub const CHARACTER_GROUP_CAP: usize = 64;

/// Residual allowed when verifying orthogonality of the lifted table.
pub const ORTHOGONALITY_TOL: f64 = 1e-9;

/// The irreducible complex characters of a finite group, one row per
/// character, one column per conjugacy class (identity class first,
/// classes ordered by smallest representative).
///
/// Rows are ordered with the trivial character first, then by ascending
/// degree, ties broken by the lexicographic order of the rounded values.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    classes: Classes,
    degrees: Vec<u64>,
    values: Vec<Vec<Complex>>,
}

impl CharacterTable {
    /// Number of irreducible characters (equals the number of classes).
    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn classes(&self) -> &Classes {
        &self.classes
    }

    /// Degree `χ_r(e)` of the `r`-th character.
    pub fn degree(&self, r: usize) -> u64 {
        self.degrees[r]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    /// Value of the `r`-th character on the `c`-th conjugacy class.
    pub fn class_value(&self, r: usize, c: usize) -> Complex {
        self.values[r][c]
    }

    /// Value of the `r`-th character on a group element.
    pub fn value(&self, r: usize, element: usize) -> Complex {
        self.values[r][self.classes.class_of[element]]
    }
}

/// Computes the full irreducible character table of `group`.
pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable> {
    let n = group.order();
    if n > CHARACTER_GROUP_CAP {
        return Err(Error::Capacity(format!(
            "character table for order {n} exceeds the cap {CHARACTER_GROUP_CAP}"
        )));
    }
    let classes = group.conjugacy_classes();
    let k = classes.len();
    let exponent = group.exponent() as u64;
    let ell = splitting_prime(exponent, 2 * n as u64);
    let field = Field::new(ell);
    // A fixed primitive `exponent`-th root of unity in 𝔽_ℓ; its choice sets
    // the embedding used consistently for lifting.
    let zeta_mod = field.primitive_root_of_unity(exponent)?;

    // Class-algebra structure constants a[i][j][c]:
    // (class i)·(class j) = Σ_c a[i][j][c]·(class c).
    let mut a = vec![vec![vec![0u64; k]; k]; k];
    for (i, class_i) in classes.classes.iter().enumerate() {
        for &x in class_i {
            for y in 0..n {
                let j = classes.class_of[y];
                let c = classes.class_of[group.mul(x, y)];
                a[i][j][c] += 1;
            }
        }
    }
    // Each row of a[i] was accumulated once per element of class j; the
    // structure constant counts pairs landing on a fixed representative,
    // i.e. the total divided by the size of the target class.
    for row in a.iter_mut() {
        for (j, cols) in row.iter_mut().enumerate() {
            let _ = j;
            for (c, v) in cols.iter_mut().enumerate() {
                debug_assert_eq!(*v % classes.classes[c].len() as u64, 0);
                *v /= classes.classes[c].len() as u64;
            }
        }
    }
    // Matrix M_i acting on central-character vectors: (M_i w)_j = Σ_c
    // a[i][j][c] w_c has eigenvalue ω(C_i) on each central character w.
    let matrices: Vec<Vec<Vec<u64>>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..k).map(|c| a[i][j][c] % ell).collect())
                .collect()
        })
        .collect();

    // Split the common eigenspaces by refining against each class matrix.
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity_basis(k)];
    for m in matrices.iter().skip(1) {
        let mut next = Vec::new();
        for basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            for part in field.split_invariant_subspace(m, &basis)? {
                next.push(part);
            }
        }
        spaces = next;
    }
    if spaces.len() != k || spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::Numerical(format!(
            "class-sum matrices split into {} common eigenspaces, expected {k}",
            spaces.len()
        )));
    }

    // Normalize each eigenvector to ω(identity class) = 1 and read the
    // central characters.
    let mut omegas: Vec<Vec<u64>> = Vec::with_capacity(k);
    for space in &spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(Error::Numerical(
                "central character vanishes on the identity class".into(),
            ));
        }
        let scale = field.inv(v[0]);
        omegas.push(v.iter().map(|&x| field.mul(x, scale)).collect());
    }

    // Degrees from Σ_j ω(C_j)·ω(C_j') / |C_j'| = |G| / d², where j' is the
    // class of inverses.
    let inverse_class: Vec<usize> = (0..k)
        .map(|j| classes.class_of[group.inv(classes.representative(j))])
        .collect();
    let mut degrees = Vec::with_capacity(k);
    for omega in &omegas {
        let mut sum = 0u64;
        for j in 0..k {
            let jp = inverse_class[j];
            let term = field.mul(omega[j], omega[jp]);
            sum = field.add(
                sum,
                field.mul(term, field.inv(classes.classes[jp].len() as u64 % ell)),
            );
        }
        if sum == 0 {
            return Err(Error::Numerical("degenerate degree sum".into()));
        }
        let d2 = field.mul(n as u64 % ell, field.inv(sum));
        let d = (0..=(n as u64)).find(|d| d * d == d2).ok_or_else(|| {
            Error::Numerical(format!(
                "degree² lifted to {d2}, not a perfect square below |G|"
            ))
        })?;
        degrees.push(d);
    }
    if degrees.iter().map(|d| d * d).sum::<u64>() != n as u64 {
        return Err(Error::Numerical(format!(
            "degrees {degrees:?} do not satisfy Σd² = {n}"
        )));
    }

    // Character values mod ℓ: χ(C_j) = d·ω(C_j)/|C_j|.
    let mut modular_values = vec![vec![0u64; k]; k];
    for (r, omega) in omegas.iter().enumerate() {
        for j in 0..k {
            let size_inv = field.inv(classes.classes[j].len() as u64 % ell);
            modular_values[r][j] =
                field.mul(degrees[r] % ell, field.mul(omega[j], size_inv));
        }
    }

    // Lift to ℂ: on a fixed element g, χ(g) = Σ_t m_t ζ^t where m_t is the
    // multiplicity of the eigenvalue ζ^t, recovered from the power map by
    // m_t = (1/e)·Σ_s χ(g^s)·ζ_mod^{-st} over 𝔽_ℓ.
    let e = exponent;
    let e_inv = field.inv(e % ell);
    let zeta_inv = field.inv(zeta_mod);
    let zeta_c = Complex::from_polar(1.0, 2.0 * std::f64::consts::PI / e as f64);
    let mut power_class = vec![vec![0usize; e as usize]; k];
    for j in 0..k {
        let g = classes.representative(j);
        let mut p = group.identity();
        for (s, slot) in power_class[j].iter_mut().enumerate() {
            let _ = s;
            *slot = classes.class_of[p];
            p = group.mul(p, g);
        }
    }
    let mut values = vec![vec![Complex::new(0.0, 0.0); k]; k];
    for r in 0..k {
        for j in 0..k {
            let mut value = Complex::new(0.0, 0.0);
            for t in 0..e {
                let mut sum = 0u64;
                let mut zpow = 1u64; // ζ_mod^{-st} accumulated over s
                for s in 0..e {
                    let chi = modular_values[r][power_class[j][s as usize]];
                    sum = field.add(sum, field.mul(chi, zpow));
                    zpow = field.mul(zpow, field.pow(zeta_inv, t));
                    let _ = s;
                }
                let mult = field.mul(sum, e_inv);
                if mult > degrees[r] {
                    return Err(Error::Numerical(format!(
                        "eigenvalue multiplicity lifted to {mult}, above the degree \
                         {}",
                        degrees[r]
                    )));
                }
                if mult > 0 {
                    value += (mult as f64) * zeta_c.powu(t as u32);
                }
            }
            values[r][j] = value;
        }
    }

    // Deterministic row order: trivial character first, then by degree,
    // then by rounded values.
    let mut order: Vec<usize> = (0..k).collect();
    let round = |z: Complex| ((z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64);
    let is_trivial = |r: usize| {
        degrees[r] == 1 && values[r].iter().all(|v| (v - 1.0).norm() < 1e-6)
    };
    order.sort_by_key(|&r| {
        (
            !is_trivial(r),
            degrees[r],
            values[r].iter().map(|&z| round(z)).collect::<Vec<_>>(),
        )
    });
    let degrees: Vec<u64> = order.iter().map(|&r| degrees[r]).collect();
    let values: Vec<Vec<Complex>> = order.iter().map(|&r| values[r].clone()).collect();

    let table = CharacterTable {
        classes,
        degrees,
        values,
    };
    verify_orthogonality(group, &table)?;
    Ok(table)
}

/// First (row) orthogonality of the lifted table, within
/// [`ORTHOGONALITY_TOL`].
fn verify_orthogonality(group: &FiniteGroup, table: &CharacterTable) -> Result<()> {
    let n = group.order() as f64;
    let k = table.len();
    for r in 0..k {
        for s in 0..k {
            let mut sum = Complex::new(0.0, 0.0);
            for (c, class) in table.classes.classes.iter().enumerate() {
                sum += (class.len() as f64) * table.values[r][c] * table.values[s][c].conj();
            }
            sum /= n;
            let expect = f64::from(u8::from(r == s));
            if (sum - expect).norm() > ORTHOGONALITY_TOL {
                return Err(Error::Numerical(format!(
                    "character rows {r} and {s} have inner product {sum}, \
                     expected {expect}"
                )));
            }
        }
    }
    Ok(())
}

/// The smallest prime ℓ ≡ 1 (mod `modulus`) with ℓ > `floor`.
fn splitting_prime(modulus: u64, floor: u64) -> u64 {
    let mut candidate = (floor / modulus + 1) * modulus + 1;
    loop {
        if is_prime(candidate) {
            return candidate;
        }
        candidate += modulus;
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn identity_basis(k: usize) -> Vec<Vec<u64>> {
    (0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect()
}

/// Arithmetic over 𝔽_ℓ plus the linear algebra the splitting needs.
struct Field {
    ell: u64,
}

impl Field {
    fn new(ell: u64) -> Self {
        Field { ell }
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.ell
    }

    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.ell - b) % self.ell
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.ell
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.ell;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.ell - 2)
    }

    /// A primitive `m`-th root of unity (requires m | ℓ−1).
    fn primitive_root_of_unity(&self, m: u64) -> Result<u64> {
        debug_assert_eq!((self.ell - 1) % m, 0);
        let cofactor = (self.ell - 1) / m;
        for g in 2..self.ell {
            let z = self.pow(g, cofactor);
            // z has order dividing m; primitive iff z^{m/p} ≠ 1 for every
            // prime p | m.
            let mut order_m = true;
            let mut rest = m;
            let mut p = 2;
            while p * p <= rest {
                if rest % p == 0 {
                    if self.pow(z, m / p) == 1 {
                        order_m = false;
                        break;
                    }
                    while rest % p == 0 {
                        rest /= p;
                    }
                }
                p += 1;
            }
            if order_m && rest > 1 && self.pow(z, m / rest) == 1 {
                order_m = false;
            }
            if order_m {
                return Ok(z);
            }
        }
        Err(Error::Numerical(format!(
            "no primitive {m}-th root of unity modulo {}",
            self.ell
        )))
    }

    /// Restricts `matrix` to the span of `basis` and splits that span into
    /// the eigenspaces of the restriction. The subspace must be invariant.
    fn split_invariant_subspace(
        &self,
        matrix: &[Vec<u64>],
        basis: &[Vec<u64>],
    ) -> Result<Vec<Vec<Vec<u64>>>> {
        let d = basis.len();
        let k = basis[0].len();
        // Images of the basis vectors under the matrix.
        let images: Vec<Vec<u64>> = basis
            .iter()
            .map(|v| {
                (0..k)
                    .map(|row| {
                        let mut acc = 0u64;
                        for (col, &x) in v.iter().enumerate() {
                            acc = self.add(acc, self.mul(matrix[row][col], x));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        // Solve basisᵀ · R = imagesᵀ for the restricted matrix R (d×d).
        let restricted = self.solve_in_span(basis, &images)?;
        // Eigenvalues via the characteristic polynomial, evaluated by
        // elimination at d+1 points and interpolated.
        let charpoly = self.characteristic_polynomial(&restricted)?;
        let mut parts = Vec::new();
        for lambda in 0..self.ell {
            if self.eval_poly(&charpoly, lambda) != 0 {
                continue;
            }
            let mut shifted = restricted.clone();
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] = self.sub(row[i], lambda);
            }
            let kernel = self.kernel(&shifted);
            if kernel.is_empty() {
                continue;
            }
            // Lift kernel coordinates back through the ambient basis.
            let lifted: Vec<Vec<u64>> = kernel
                .iter()
                .map(|coords| {
                    (0..k)
                        .map(|col| {
                            let mut acc = 0u64;
                            for (b, &c) in coords.iter().enumerate() {
                                acc = self.add(acc, self.mul(c, basis[b][col]));
                            }
                            acc
                        })
                        .collect()
                })
                .collect();
            parts.push(lifted);
        }
        let total: usize = parts.iter().map(|p| p.len()).sum();
        if total != d {
            return Err(Error::Numerical(format!(
                "eigenspaces of a class matrix span dimension {total}, expected {d}"
            )));
        }
        Ok(parts)
    }

    /// Solves `span(basis) ∋ images` coordinates: returns R with
    /// `images[i] = Σ_j R[j][i]·basis[j]`.
    fn solve_in_span(&self, basis: &[Vec<u64>], images: &[Vec<u64>]) -> Result<Vec<Vec<u64>>> {
        let d = basis.len();
        let k = basis[0].len();
        // Gaussian elimination on [basisᵀ | imagesᵀ].
        let mut aug: Vec<Vec<u64>> = (0..k)
            .map(|row| {
                let mut v: Vec<u64> = basis.iter().map(|b| b[row]).collect();
                v.extend(images.iter().map(|im| im[row]));
                v
            })
            .collect();
        let mut pivot_rows = Vec::new();
        let mut row = 0;
        for col in 0..d {
            let Some(p) = (row..k).find(|&r| aug[r][col] != 0) else {
                return Err(Error::Numerical("dependent subspace basis".into()));
            };
            aug.swap(row, p);
            let scale = self.inv(aug[row][col]);
            for x in aug[row].iter_mut() {
                *x = self.mul(*x, scale);
            }
            for r in 0..k {
                if r != row && aug[r][col] != 0 {
                    let f = aug[r][col];
                    for c in 0..aug[r].len() {
                        let delta = self.mul(f, aug[row][c]);
                        aug[r][c] = self.sub(aug[r][c], delta);
                    }
                }
            }
            pivot_rows.push(row);
            row += 1;
        }
        // Rows beyond the pivots must be zero (invariance of the span).
        for r in row..k {
            if aug[r].iter().any(|&x| x != 0) {
                return Err(Error::Numerical(
                    "matrix does not preserve the subspace".into(),
                ));
            }
        }
        let mut restricted = vec![vec![0u64; d]; d];
        for (j, &pr) in pivot_rows.iter().enumerate() {
            for i in 0..d {
                restricted[j][i] = aug[pr][d + i];
            }
        }
        Ok(restricted)
    }

    /// Characteristic polynomial det(xI − M), coefficients ascending,
    /// found by evaluating the determinant at d+1 points.
    fn characteristic_polynomial(&self, m: &[Vec<u64>]) -> Result<Vec<u64>> {
        let d = m.len();
        if d as u64 + 1 > self.ell {
            return Err(Error::Numerical("field too small for interpolation".into()));
        }
        let points: Vec<u64> = (0..=d as u64).collect();
        let values: Vec<u64> = points
            .iter()
            .map(|&x| {
                let mut shifted: Vec<Vec<u64>> = m
                    .iter()
                    .map(|row| row.iter().map(|&v| self.sub(0, v)).collect())
                    .collect();
                for (i, row) in shifted.iter_mut().enumerate() {
                    row[i] = self.add(row[i], x);
                }
                self.determinant(&mut shifted)
            })
            .collect();
        self.interpolate(&points, &values)
    }

    fn determinant(&self, m: &mut [Vec<u64>]) -> u64 {
        let d = m.len();
        let mut det = 1u64;
        for col in 0..d {
            let Some(p) = (col..d).find(|&r| m[r][col] != 0) else {
                return 0;
            };
            if p != col {
                m.swap(p, col);
                det = self.sub(0, det);
            }
            det = self.mul(det, m[col][col]);
            let scale = self.inv(m[col][col]);
            for r in col + 1..d {
                if m[r][col] != 0 {
                    let f = self.mul(m[r][col], scale);
                    for c in col..d {
                        let delta = self.mul(f, m[col][c]);
                        m[r][c] = self.sub(m[r][c], delta);
                    }
                }
            }
        }
        det
    }

    fn interpolate(&self, points: &[u64], values: &[u64]) -> Result<Vec<u64>> {
        let n = points.len();
        let mut coeffs = vec![0u64; n];
        for (i, (&xi, &yi)) in points.iter().zip(values).enumerate() {
            // Lagrange basis polynomial for xi, expanded incrementally.
            let mut basis = vec![0u64; n];
            basis[0] = 1;
            let mut denom = 1u64;
            let mut deg = 0;
            for (j, &xj) in points.iter().enumerate() {
                if j == i {
                    continue;
                }
                denom = self.mul(denom, self.sub(xi, xj));
                // basis ← basis·(x − xj)
                for t in (0..=deg).rev() {
                    let b = basis[t];
                    basis[t + 1] = self.add(basis[t + 1], b);
                    basis[t] = self.mul(b, self.sub(0, xj));
                }
                deg += 1;
            }
            let scale = self.mul(yi, self.inv(denom));
            for (c, &b) in coeffs.iter_mut().zip(&basis) {
                *c = self.add(*c, self.mul(scale, b));
            }
        }
        Ok(coeffs)
    }

    fn eval_poly(&self, coeffs: &[u64], x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }

    /// Basis of the kernel of `m` (square), reduced-echelon back-solve.
    fn kernel(&self, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let rows = m.len();
        let cols = m[0].len();
        let mut work: Vec<Vec<u64>> = m.to_vec();
        let mut pivot_of_col = vec![usize::MAX; cols];
        let mut row = 0;
        for col in 0..cols {
            let Some(p) = (row..rows).find(|&r| work[r][col] != 0) else {
                continue;
            };
            work.swap(row, p);
            let scale = self.inv(work[row][col]);
            for x in work[row].iter_mut() {
                *x = self.mul(*x, scale);
            }
            for r in 0..rows {
                if r != row && work[r][col] != 0 {
                    let f = work[r][col];
                    for c in 0..cols {
                        let delta = self.mul(f, work[row][c]);
                        work[r][c] = self.sub(work[r][c], delta);
                    }
                }
            }
            pivot_of_col[col] = row;
            row += 1;
            if row == rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|&c| pivot_of_col[c] == usize::MAX) {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for c in 0..cols {
                let p = pivot_of_col[c];
                if p != usize::MAX {
                    v[c] = self.sub(0, work[p][free]);
                }
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn approx(z: Complex, re: f64, im: f64) -> bool {
        (z - Complex::new(re, im)).norm() < 1e-9
    }

    #[test]
    fn cyclic_two_gives_the_sign_table() {
        let table = character_table(&fixtures::z2()).unwrap();
        assert_eq!(table.degrees(), &[1, 1]);
        assert!(approx(table.class_value(0, 0), 1.0, 0.0));
        assert!(approx(table.class_value(0, 1), 1.0, 0.0));
        assert!(approx(table.class_value(1, 0), 1.0, 0.0));
        assert!(approx(table.class_value(1, 1), -1.0, 0.0));
    }

    #[test]
    fn cyclic_three_gives_cube_roots_of_unity() {
        let table = character_table(&fixtures::z3()).unwrap();
        assert_eq!(table.degrees(), &[1, 1, 1]);
        let omega = Complex::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        // The two nontrivial rows carry ω and ω² in some order.
        let row = |r: usize| (table.class_value(r, 1), table.class_value(r, 2));
        let (a1, a2) = row(1);
        let (b1, b2) = row(2);
        assert!((a1 - omega).norm() < 1e-9 || (a1 - omega * omega).norm() < 1e-9);
        assert!((a1 * a1 - a2).norm() < 1e-9);
        assert!((b1 * b1 - b2).norm() < 1e-9);
        assert!((a1 - b1).norm() > 0.1, "the two nontrivial rows differ");
    }

    #[test]
    fn symmetric_three_has_degrees_one_one_two() {
        let table = character_table(&fixtures::s3()).unwrap();
        assert_eq!(table.degrees(), &[1, 1, 2]);
        // Class sizes 1, 3, 2 (identity, transpositions, 3-cycles).
        let sizes: Vec<usize> =
            table.classes().classes.iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        // Sign character: +1 on 3-cycles, −1 on transpositions.
        assert!(approx(table.class_value(1, 1), -1.0, 0.0));
        assert!(approx(table.class_value(1, 2), 1.0, 0.0));
        // Standard character: 0 on transpositions, −1 on 3-cycles.
        assert!(approx(table.class_value(2, 0), 2.0, 0.0));
        assert!(approx(table.class_value(2, 1), 0.0, 0.0));
        assert!(approx(table.class_value(2, 2), -1.0, 0.0));
    }

    #[test]
    fn dihedral_and_quaternion_tables_have_the_expected_shape() {
        for group in [fixtures::d4(), fixtures::q8()] {
            let table = character_table(&group).unwrap();
            assert_eq!(table.degrees(), &[1, 1, 1, 1, 2]);
            // Degree-2 row: value 0 outside the center, −2 on the central
            // involution.
            let center_classes: Vec<usize> = (0..table.len())
                .filter(|&c| table.classes().classes[c].len() == 1)
                .collect();
            assert_eq!(center_classes.len(), 2);
            for c in 0..table.len() {
                let v = table.class_value(4, c);
                if !center_classes.contains(&c) {
                    assert!(approx(v, 0.0, 0.0));
                }
            }
        }
    }

    #[test]
    fn column_orthogonality_holds_for_every_fixture_group() {
        for group in [
            fixtures::z2(),
            fixtures::z3(),
            fixtures::z2z2(),
            fixtures::s3(),
            fixtures::d4(),
            fixtures::q8(),
        ] {
            let table = character_table(&group).unwrap();
            let k = table.len();
            for c in 0..k {
                for cp in 0..k {
                    let mut sum = Complex::new(0.0, 0.0);
                    for r in 0..k {
                        sum += table.class_value(r, c) * table.class_value(r, cp).conj();
                    }
                    let expect = if c == cp {
                        group.order() as f64 / table.classes().classes[c].len() as f64
                    } else {
                        0.0
                    };
                    assert!(
                        (sum - expect).norm() < 1e-9,
                        "columns {c},{cp}: {sum} vs {expect}"
                    );
                }
            }
        }
    }

    #[test]
    fn oversized_groups_are_rejected() {
        let big = FiniteGroup::cyclic(65);
        assert!(matches!(character_table(&big), Err(Error::Capacity(_))));
    }
}
