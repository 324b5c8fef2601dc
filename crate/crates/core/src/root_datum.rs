//! Root data: lattices in perfect pairing, simple roots and coroots,
//! positive roots, and the Coxeter matrix.
//!
//! Coordinates are fixed once and for all: for a simply connected datum the
//! basis of `X` is the fundamental weights and the basis of `Y` the simple
//! coroots, so the pairing matrix is the identity and `<sum m_i w_i, a_j^> = m_j`.
//! The `GL_n` datum instead uses the standard basis on both sides; the
//! pairing is the dot product in every case.

use crate::error::{Error, Result};

pub type Vector = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    /// Rank of the lattices X and Y.
    pub dim: usize,
    /// Number of simple roots.
    pub n_simple: usize,
    /// Simple roots in X-coordinates (column j of the Cartan matrix for the
    /// simply connected case).
    pub simple_roots: Vec<Vector>,
    /// Simple coroots in Y-coordinates.
    pub simple_coroots: Vec<Vector>,
    /// Cartan matrix a_ij = <alpha_j, alpha_i^>.
    pub cartan: Vec<Vec<i64>>,
    /// Coxeter orders m_ab (m_aa = 2 by convention).
    pub coxeter: Vec<Vec<usize>>,
    /// Positive roots, sorted by (height, lex) in simple-root coordinates.
    pub positive_roots: Vec<Vector>,
    /// Same roots expressed in the simple-root basis.
    pub positive_roots_simple: Vec<Vector>,
    /// rho with <rho, a^> = 1 for every simple a.
    pub rho: Vector,
    /// Whether X was built on the fundamental-weight basis.
    pub simply_connected: bool,
}

pub fn dot(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

impl RootDatum {
    /// Build the simply connected datum of a finite-type Cartan matrix.
    pub fn from_cartan(cartan: &[Vec<i64>]) -> Result<Self> {
        let n = cartan.len();
        if n == 0 || cartan.iter().any(|r| r.len() != n) {
            return Err(Error::BadCartan("matrix is empty or not square".into()));
        }
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(Error::BadCartan(format!("diagonal entry a[{i}][{i}] != 2")));
            }
            for j in 0..n {
                if i != j && cartan[i][j] > 0 {
                    return Err(Error::BadCartan(format!(
                        "off-diagonal entry a[{i}][{j}] = {} > 0",
                        cartan[i][j]
                    )));
                }
                if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                    return Err(Error::BadCartan(format!(
                        "zero pattern asymmetric at ({i},{j})"
                    )));
                }
            }
        }
        // Symmetrizability and positive definiteness of the symmetrization.
        let d = symmetrizer(cartan)
            .ok_or_else(|| Error::NotFiniteType("matrix is not symmetrizable".into()))?;
        let sym: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| d[i] * cartan[i][j]).collect())
            .collect();
        for k in 1..=n {
            if leading_minor(&sym, k) <= 0 {
                return Err(Error::NotFiniteType(format!(
                    "symmetrized leading minor of order {k} is not positive"
                )));
            }
        }

        // X-basis: fundamental weights, so the simple root a_j has coordinates
        // given by column j; Y-basis: simple coroots.
        let simple_roots: Vec<Vector> = (0..n)
            .map(|j| (0..n).map(|i| cartan[i][j]).collect())
            .collect();
        let simple_coroots: Vec<Vector> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        let rho = vec![1; n];
        Self::assemble(n, n, simple_roots, simple_coroots, rho, true)
    }

    /// The standard `GL_n` datum: X = Y = Z^n, simple roots e_{i+1} - e_i.
    pub fn gl(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadInput("GL_n needs n >= 2".into()));
        }
        let mut simple_roots = Vec::new();
        for i in 0..n - 1 {
            let mut v = vec![0i64; n];
            v[i + 1] = 1;
            v[i] = -1;
            simple_roots.push(v);
        }
        let simple_coroots = simple_roots.clone();
        // <rho, a_i^> = 1 with rho = (0, 1, ..., n-1).
        let rho: Vector = (0..n as i64).collect();
        Self::assemble(n, n - 1, simple_roots, simple_coroots, rho, false)
    }

    /// Named Cartan matrices used by the CLI and tests. Index 0 is the short
    /// root in B2/B3/G2 and the long root in C3.
    pub fn named(name: &str) -> Result<Self> {
        let m: Vec<Vec<i64>> = match name {
            "A1" => vec![vec![2]],
            "A1xA1" => vec![vec![2, 0], vec![0, 2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            "B2" => vec![vec![2, -2], vec![-1, 2]],
            "G2" => vec![vec![2, -3], vec![-1, 2]],
            "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            "B3" => vec![vec![2, -2, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            "C3" => vec![vec![2, -1, 0], vec![-2, 2, -1], vec![0, -1, 2]],
            _ => return Err(Error::BadInput(format!("unknown root datum name {name:?}"))),
        };
        Self::from_cartan(&m)
    }

    fn assemble(
        dim: usize,
        n_simple: usize,
        simple_roots: Vec<Vector>,
        simple_coroots: Vec<Vector>,
        rho: Vector,
        simply_connected: bool,
    ) -> Result<Self> {
        let cartan: Vec<Vec<i64>> = (0..n_simple)
            .map(|i| {
                (0..n_simple)
                    .map(|j| dot(&simple_roots[j], &simple_coroots[i]))
                    .collect()
            })
            .collect();
        let coxeter: Vec<Vec<usize>> = (0..n_simple)
            .map(|i| {
                (0..n_simple)
                    .map(|j| {
                        if i == j {
                            2
                        } else {
                            match cartan[i][j] * cartan[j][i] {
                                0 => 2,
                                1 => 3,
                                2 => 4,
                                3 => 6,
                                _ => 0, // infinite; rejected below
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        if coxeter.iter().flatten().any(|&m| m == 0) {
            return Err(Error::NotFiniteType("a_ij * a_ji >= 4 for some pair".into()));
        }

        let mut datum = RootDatum {
            dim,
            n_simple,
            simple_roots,
            simple_coroots,
            cartan,
            coxeter,
            positive_roots: Vec::new(),
            positive_roots_simple: Vec::new(),
            rho,
            simply_connected,
        };
        datum.enumerate_positive_roots()?;
        for (i, ch) in datum.simple_coroots.iter().enumerate() {
            if dot(&datum.rho, ch) != 1 {
                return Err(Error::BadCartan(format!("<rho, coroot {i}> != 1")));
            }
        }
        Ok(datum)
    }

    /// Positive roots: closure of the simple roots under simple reflections.
    fn enumerate_positive_roots(&mut self) -> Result<()> {
        use std::collections::BTreeSet;
        let mut set: BTreeSet<Vector> = self.simple_roots.iter().cloned().collect();
        loop {
            let mut added = false;
            let snapshot: Vec<Vector> = set.iter().cloned().collect();
            for r in &snapshot {
                for a in 0..self.n_simple {
                    let img = self.reflect_root(a, r);
                    if self.is_positive_combination(&img).is_some() && !set.contains(&img) {
                        set.insert(img);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
            if set.len() > 400 {
                return Err(Error::NotFiniteType("positive root closure diverges".into()));
            }
        }
        let mut roots: Vec<(Vector, Vector)> = set
            .into_iter()
            .map(|r| {
                let s = self
                    .is_positive_combination(&r)
                    .expect("closure kept positivity");
                (r, s)
            })
            .collect();
        roots.sort_by(|a, b| {
            let ha: i64 = a.1.iter().sum();
            let hb: i64 = b.1.iter().sum();
            ha.cmp(&hb).then_with(|| a.1.cmp(&b.1))
        });
        self.positive_roots = roots.iter().map(|(r, _)| r.clone()).collect();
        self.positive_roots_simple = roots.into_iter().map(|(_, s)| s).collect();
        Ok(())
    }

    /// Coordinates of `x` in the simple-root basis, if all are >= 0.
    pub fn is_positive_combination(&self, x: &Vector) -> Option<Vector> {
        let c = self.in_simple_basis(x)?;
        if c.iter().all(|&k| k >= 0) && c.iter().any(|&k| k > 0) {
            Some(c)
        } else {
            None
        }
    }

    /// Solve `x = sum k_j root_j` over the integers.
    pub fn in_simple_basis(&self, x: &Vector) -> Option<Vector> {
        // n_simple <= dim; solve the linear system exactly over Q and check
        // integrality. The pairing with coroots gives n_simple equations
        // <x, a_i^> = sum_j k_j a_ij which determine k for invertible Cartan;
        // for GL_n the Cartan is invertible as well (type A_{n-1}).
        use crate::field::{FieldKind, Scalar};
        use crate::linalg::Mat;
        let n = self.n_simple;
        let kind = FieldKind::Q;
        let a = Mat::from_rows(
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| Scalar::from_int(self.cartan[i][j], kind))
                        .collect()
                })
                .collect(),
            kind,
        );
        let b: Vec<Scalar> = (0..n)
            .map(|i| Scalar::from_int(dot(x, &self.simple_coroots[i]), kind))
            .collect();
        let sol = a.solve(&b)?;
        let mut out = Vec::with_capacity(n);
        for s in &sol {
            match s {
                Scalar::Q(r) => {
                    if !r.is_integer() {
                        return None;
                    }
                    let v: i64 = r.to_integer().try_into().ok()?;
                    out.push(v);
                }
                _ => unreachable!(),
            }
        }
        // The pairing equations determine x only modulo the radical; verify.
        let mut recon = vec![0i64; self.dim];
        for (j, &k) in out.iter().enumerate() {
            for (c, r) in recon.iter_mut().zip(&self.simple_roots[j]) {
                *c += k * r;
            }
        }
        if recon == *x {
            Some(out)
        } else {
            None
        }
    }

    /// s_a(x) = x - <x, a^> a on X-coordinates.
    pub fn reflect_root(&self, a: usize, x: &Vector) -> Vector {
        let k = dot(x, &self.simple_coroots[a]);
        x.iter()
            .zip(&self.simple_roots[a])
            .map(|(xi, ri)| xi - k * ri)
            .collect()
    }

    /// s_a on Y-coordinates: y - <a, y> a^.
    pub fn reflect_coroot(&self, a: usize, y: &Vector) -> Vector {
        let k = dot(&self.simple_roots[a], y);
        y.iter()
            .zip(&self.simple_coroots[a])
            .map(|(yi, ci)| yi - k * ci)
            .collect()
    }

    /// Matrix of s_a acting on X (columns are images of basis vectors).
    pub fn reflection_matrix(&self, a: usize) -> Vec<Vector> {
        (0..self.dim)
            .map(|j| {
                let mut e = vec![0i64; self.dim];
                e[j] = 1;
                self.reflect_root(a, &e)
            })
            .collect()
    }

    pub fn check_simple_index(&self, a: usize) -> Result<()> {
        if a < self.n_simple {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!(
                "simple root index {a} out of range (rank {})",
                self.n_simple
            )))
        }
    }

    /// The alternating word of length m_ab for the longest dihedral element,
    /// starting with `a`, and the image root w_ab s_a (a): `a` for even order,
    /// `b` for odd order.
    pub fn dihedral_longest_image(&self, a: usize, b: usize) -> Result<(Vec<usize>, Vector)> {
        self.check_simple_index(a)?;
        self.check_simple_index(b)?;
        if a == b {
            return Err(Error::BadInput("dihedral pair needs distinct roots".into()));
        }
        let m = self.coxeter[a][b];
        let word: Vec<usize> = (0..m).map(|i| if i % 2 == 0 { a } else { b }).collect();
        // w_ab s_a as a word acting on alpha_a.
        let mut x = self.simple_roots[a].clone();
        x = self.reflect_root(a, &x);
        for i in 0..m {
            let letter = if i % 2 == 0 { a } else { b };
            x = self.reflect_root(letter, &x);
        }
        Ok((word, x))
    }
}

fn symmetrizer(cartan: &[Vec<i64>]) -> Option<Vec<i64>> {
    // Find positive rationals d_i with d_i a_ij = d_j a_ji, scaled to integers.
    let n = cartan.len();
    let mut d = vec![0i64; n];
    for start in 0..n {
        if d[start] != 0 {
            continue;
        }
        d[start] = 1;
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if cartan[i][j] != 0 && i != j {
                    // d_j = d_i * a_ij / a_ji
                    let num = d[i] * cartan[i][j];
                    let den = cartan[j][i];
                    if num % den != 0 {
                        // scale the whole component
                        let g = gcd(num.abs(), den.abs());
                        let f = (den / g).abs();
                        for x in d.iter_mut() {
                            *x *= f;
                        }
                        stack.push(i);
                        break;
                    }
                    let val = num / den;
                    if val <= 0 {
                        return None;
                    }
                    if d[j] == 0 {
                        d[j] = val;
                        stack.push(j);
                    } else if d[j] != val {
                        return None;
                    }
                }
            }
        }
    }
    Some(d)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

fn leading_minor(m: &[Vec<i64>], k: usize) -> i64 {
    // Bareiss-free naive determinant of the top-left k x k block.
    let mut idx: Vec<usize> = (0..k).collect();
    det_rec(m, &mut idx, 0)
}

fn det_rec(m: &[Vec<i64>], cols: &mut Vec<usize>, row: usize) -> i64 {
    if row == cols.len() {
        return 1;
    }
    let mut acc = 0i64;
    for i in row..cols.len() {
        cols.swap(row, i);
        let sign = if (i - row) % 2 == 0 { 1 } else { -1 };
        acc += sign * m[row][cols[row]] * det_rec(m, cols, row + 1);
        cols.swap(row, i);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_single_root() {
        let d = RootDatum::from_cartan(&[vec![2]]).unwrap();
        assert_eq!(d.positive_roots, vec![vec![2]]); // alpha = 2 omega
        assert_eq!(d.rho, vec![1]);
    }

    #[test]
    fn a2_three_positive_roots() {
        let d = RootDatum::named("A2").unwrap();
        assert_eq!(d.positive_roots.len(), 3);
        assert_eq!(d.coxeter[0][1], 3);
        // alpha + beta present
        let apb: Vector = vec![1, 1];
        assert!(d.positive_roots.contains(&apb));
    }

    #[test]
    fn g2_six_positive_roots() {
        let d = RootDatum::from_cartan(&[vec![2, -1], vec![-3, 2]]).unwrap();
        assert_eq!(d.positive_roots.len(), 6);
        assert_eq!(d.coxeter[0][1], 6);
    }

    #[test]
    fn rejects_bad_matrices() {
        assert!(RootDatum::from_cartan(&[vec![2, 1], vec![1, 2]]).is_err());
        assert!(RootDatum::from_cartan(&[vec![2, -1], vec![0, 2]]).is_err());
        // Affine A1 tilde: not finite type.
        assert!(RootDatum::from_cartan(&[vec![2, -2], vec![-2, 2]]).is_err());
    }

    #[test]
    fn reflect_is_involutive() {
        let d = RootDatum::named("B2").unwrap();
        for a in 0..2 {
            for j in 0..2 {
                let mut e = vec![0i64; 2];
                e[j] = 1;
                let once = d.reflect_root(a, &e);
                assert_eq!(d.reflect_root(a, &once), e);
            }
        }
    }

    #[test]
    fn reflect_examples() {
        let d = RootDatum::named("A2").unwrap();
        let alpha = d.simple_roots[0].clone();
        let beta = d.simple_roots[1].clone();
        // s_a(a) = -a
        assert_eq!(
            d.reflect_root(0, &alpha),
            alpha.iter().map(|x| -x).collect::<Vector>()
        );
        // s_a(omega_a) = omega_a - a
        let omega_a = vec![1, 0];
        let expect: Vector = omega_a
            .iter()
            .zip(&alpha)
            .map(|(x, a)| x - a)
            .collect();
        assert_eq!(d.reflect_root(0, &omega_a), expect);
        // s_a(beta) = a + b in A2
        let sum: Vector = alpha.iter().zip(&beta).map(|(x, y)| x + y).collect();
        assert_eq!(d.reflect_root(0, &beta), sum);
    }

    #[test]
    fn dihedral_longest_images() {
        let a2 = RootDatum::named("A2").unwrap();
        let (w, img) = a2.dihedral_longest_image(0, 1).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(img, a2.simple_roots[1]); // odd order: beta

        let aa = RootDatum::named("A1xA1").unwrap();
        let (_, img) = aa.dihedral_longest_image(0, 1).unwrap();
        assert_eq!(img, aa.simple_roots[0]); // even order: alpha

        let g2 = RootDatum::named("G2").unwrap();
        let (w, img) = g2.dihedral_longest_image(0, 1).unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(img, g2.simple_roots[0]);
    }

    #[test]
    fn gl3_datum() {
        let d = RootDatum::gl(3).unwrap();
        assert_eq!(d.n_simple, 2);
        assert_eq!(d.positive_roots.len(), 3);
        assert_eq!(d.cartan, vec![vec![2, -1], vec![-1, 2]]);
    }
}
