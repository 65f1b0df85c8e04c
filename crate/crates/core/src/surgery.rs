//! Modulo-d spin structures on a 3-manifold given by surgery on a framed
//! link: solutions c ∈ (Z/d)^m of B c ≡ (d/2)·diag(B) (mod d).

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symmetric integer linking matrix of a framed link.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct LinkingMatrix {
    rows: Vec<Vec<i64>>,
}

impl LinkingMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = rows.len();
        if m == 0 {
            return Err(Error::InvalidParameters("linking matrix is empty".into()));
        }
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidParameters("linking matrix is not square".into()));
        }
        for i in 0..m {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidParameters(format!(
                        "linking matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        let m = entries.len();
        Self::new(
            (0..m)
                .map(|i| (0..m).map(|j| if i == j { entries[i] } else { 0 }).collect())
                .collect(),
        )
    }

    /// Number of link components.
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn framing(&self, i: usize) -> i64 {
        self.rows[i][i]
    }
}

impl TryFrom<Vec<Vec<i64>>> for LinkingMatrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<LinkingMatrix> for Vec<Vec<i64>> {
    fn from(b: LinkingMatrix) -> Self {
        b.rows
    }
}

type Mat = Vec<Vec<i128>>;

fn identity(m: usize) -> Mat {
    (0..m)
        .map(|i| (0..m).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn checked(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow("Smith normal form"))
}

// row_dst += k · row_src
fn add_row(a: &mut Mat, dst: usize, src: usize, k: i128) -> Result<()> {
    for c in 0..a[0].len() {
        let v = checked(a[src][c].checked_mul(k))?;
        a[dst][c] = checked(a[dst][c].checked_add(v))?;
    }
    Ok(())
}

fn add_col(a: &mut Mat, dst: usize, src: usize, k: i128) -> Result<()> {
    for row in a.iter_mut() {
        let v = checked(row[src].checked_mul(k))?;
        row[dst] = checked(row[dst].checked_add(v))?;
    }
    Ok(())
}

fn swap_cols(a: &mut Mat, i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Smith normal form `U·B·V = D` with unimodular `U`, `V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Vec<Vec<i128>>,
    pub v: Vec<Vec<i128>>,
    /// Non-negative invariant factors s_1 | s_2 | …, zeros last.
    pub invariants: Vec<i128>,
}

pub fn smith_normal_form(b: &LinkingMatrix) -> Result<SmithForm> {
    let m = b.size();
    let mut a: Mat = b
        .rows
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut u = identity(m);
    let mut v = identity(m);
    for t in 0..m {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let Some((pi, pj)) = (t..m)
            .flat_map(|i| (t..m).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].unsigned_abs())
        else {
            break;
        };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut done = true;
            for i in t + 1..m {
                let q = Integer::div_floor(&a[i][t], &a[t][t]);
                add_row(&mut a, i, t, -q)?;
                add_row(&mut u, i, t, -q)?;
                if a[i][t] != 0 {
                    done = false;
                }
            }
            for j in t + 1..m {
                let q = Integer::div_floor(&a[t][j], &a[t][t]);
                add_col(&mut a, j, t, -q)?;
                add_col(&mut v, j, t, -q)?;
                if a[t][j] != 0 {
                    done = false;
                }
            }
            if done {
                // Enforce divisibility of the trailing block by the pivot.
                let bad = (t + 1..m)
                    .find(|&i| (t + 1..m).any(|j| a[i][j] % a[t][t] != 0));
                match bad {
                    Some(i) => {
                        add_row(&mut a, t, i, 1)?;
                        add_row(&mut u, t, i, 1)?;
                    }
                    None => break,
                }
            }
            // Bring the smallest nonzero entry of row/column t to the pivot.
            let (mut bi, mut bj) = (t, t);
            for i in t..m {
                if a[i][t] != 0 && a[i][t].unsigned_abs() < a[bi][bj].unsigned_abs() {
                    (bi, bj) = (i, t);
                }
            }
            for j in t..m {
                if a[t][j] != 0 && a[t][j].unsigned_abs() < a[bi][bj].unsigned_abs() {
                    (bi, bj) = (t, j);
                }
            }
            a.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut a, t, bj);
            swap_cols(&mut v, t, bj);
        }
        if a[t][t] < 0 {
            for c in 0..m {
                a[t][c] = -a[t][c];
                u[t][c] = -u[t][c];
            }
        }
    }
    let invariants = (0..m).map(|i| a[i][i]).collect();
    Ok(SmithForm { u, v, invariants })
}

/// All solutions of the characteristic equation, as a coset c⁰ + span(kernel).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharSolutionSet {
    pub modulus: u32,
    /// Number of solutions in (Z/d)^m.
    pub count: u64,
    pub particular: Option<Vec<u32>>,
    /// Generators of the kernel of B mod d, the i-th of additive order `orders[i]`.
    pub kernel_basis: Vec<Vec<u32>>,
    pub orders: Vec<u32>,
}

impl CharSolutionSet {
    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    /// Every solution, each exactly once.
    pub fn solutions(&self) -> Vec<Vec<u32>> {
        let Some(c0) = &self.particular else {
            return Vec::new();
        };
        let d = u64::from(self.modulus);
        let mut out = vec![c0.clone()];
        for (gen, &ord) in self.kernel_basis.iter().zip(&self.orders) {
            let mut next = Vec::with_capacity(out.len() * ord as usize);
            for c in &out {
                for k in 0..u64::from(ord) {
                    next.push(
                        c.iter()
                            .zip(gen)
                            .map(|(&x, &g)| ((u64::from(x) + k * u64::from(g)) % d) as u32)
                            .collect(),
                    );
                }
            }
            out = next;
        }
        out
    }

    pub fn to_response(&self) -> SurgeryResponse {
        SurgeryResponse {
            count: self.count,
            particular: self.particular.clone(),
            kernel_basis: self.kernel_basis.clone(),
        }
    }
}

/// `{"matrix": [[…]], "d": n}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryRequest {
    pub matrix: LinkingMatrix,
    pub d: u32,
}

/// `{"count": n, "particular": […] | null, "kernel_basis": [[…]]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryResponse {
    pub count: u64,
    pub particular: Option<Vec<u32>>,
    pub kernel_basis: Vec<Vec<u32>>,
}

fn inverse_mod(a: i128, m: i128) -> i128 {
    // a and m are coprime here
    let e = a.extended_gcd(&m);
    e.x.rem_euclid(m)
}

/// Checks B c ≡ (d/2)·diag(B) (mod d).
pub fn is_characteristic(b: &LinkingMatrix, d: u32, c: &[u32]) -> bool {
    let d = i128::from(d);
    (0..b.size()).all(|i| {
        let lhs: i128 = (0..b.size())
            .map(|j| i128::from(b.rows[i][j]) * i128::from(c[j]))
            .sum();
        (lhs - d / 2 * i128::from(b.framing(i))).rem_euclid(d) == 0
    })
}

pub fn solve_characteristic(b: &LinkingMatrix, d: u32) -> Result<CharSolutionSet> {
    if d < 2 || !d.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!("modulus must be even and ≥ 2, got {d}")));
    }
    let m = b.size();
    let dd = i128::from(d);
    let snf = smith_normal_form(b)?;
    let rhs: Vec<i128> = (0..m).map(|i| dd / 2 * i128::from(b.framing(i))).collect();
    // D y ≡ U rhs with c = V y
    let mut y0 = vec![0i128; m];
    let mut gens = Vec::new();
    let mut orders = Vec::new();
    let mut count: u64 = 1;
    for i in 0..m {
        let t = snf.u[i]
            .iter()
            .zip(&rhs)
            .map(|(&x, &r)| (x.rem_euclid(dd) * r.rem_euclid(dd)).rem_euclid(dd))
            .sum::<i128>()
            .rem_euclid(dd);
        let s = snf.invariants[i].rem_euclid(dd);
        let g = s.gcd(&dd);
        if t % g != 0 {
            return Ok(CharSolutionSet {
                modulus: d,
                count: 0,
                particular: None,
                kernel_basis: Vec::new(),
                orders: Vec::new(),
            });
        }
        let step = dd / g;
        y0[i] = if s == 0 {
            0
        } else {
            (t / g) * inverse_mod(s / g, step) % step
        };
        if g > 1 {
            let mut e = vec![0i128; m];
            e[i] = step;
            gens.push(e);
            orders.push(g as u32);
            count = count.checked_mul(g as u64).ok_or(Error::Overflow("solution count"))?;
        }
    }
    let apply_v = |y: &[i128]| -> Vec<u32> {
        (0..m)
            .map(|r| {
                let s: i128 = (0..m)
                    .map(|k| (snf.v[r][k].rem_euclid(dd) * y[k]).rem_euclid(dd))
                    .sum();
                s.rem_euclid(dd) as u32
            })
            .collect()
    };
    let particular = apply_v(&y0);
    debug_assert!(is_characteristic(b, d, &particular));
    Ok(CharSolutionSet {
        modulus: d,
        count,
        particular: Some(particular),
        kernel_basis: gens.iter().map(|g| apply_v(g)).collect(),
        orders,
    })
}

/// |Spin(M; Z/d)|, zero when the characteristic equation has no solution.
pub fn count_structures(b: &LinkingMatrix, d: u32) -> Result<u64> {
    Ok(solve_characteristic(b, d)?.count)
}
