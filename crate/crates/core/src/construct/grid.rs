//! An element with exactly two factorizations, of lengths `m + 1` and
//! `n + 1`, and elements of any prescribed elasticity.
//!
//! Take a prime `p > mn` and `s = p − mn`. The first `s` residues become
//! linear factors `b(x)`; the rest fill an `m × n` grid `r(i, j)`. Row
//! products `f_i` and column products `g_j` are lifted, and
//! `H = b(x)·∏F_i·∏G_j / p`. The only minimal covers of all residues are
//! `b` with every row, or `b` with every column.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{linear_factors, signed, verify_element, LiftedProduct};
use crate::congruence::{next_prime, safe_residue_system, ResidueSystem};
use crate::error::{Error, Result};
use crate::monoid::LengthProfile;
use crate::poly::{from_roots, IntPoly};
use crate::report::Checklist;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridCertificate {
    pub m: u64,
    pub n: u64,
    pub p: u64,
    pub s: u64,
    pub residue_system: ResidueSystem,
    #[serde(with = "crate::serde_dec::vec")]
    pub linear_roots: Vec<BigInt>,
    /// `grid[i][j] = r(i+1, j+1)`, decimal strings.
    pub grid: Vec<Vec<String>>,
    pub row_factors: Vec<IntPoly>,
    pub column_factors: Vec<IntPoly>,
    #[serde(flatten)]
    pub product: LiftedProduct,
    pub expected_lengths: Vec<usize>,
    /// Set when built for a target elasticity, as `"num/den"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub requested_elasticity: Option<String>,
}

struct Layout {
    linear_roots: Vec<BigInt>,
    grid: Vec<Vec<BigInt>>,
    rows: Vec<IntPoly>,
    columns: Vec<IntPoly>,
    family: Vec<IntPoly>,
}

fn layout(m: usize, n: usize, s: usize, residues: &ResidueSystem) -> Layout {
    let mut sorted = signed(&residues.elements);
    sorted.sort();
    let linear_roots = sorted[..s].to_vec();
    let grid: Vec<Vec<BigInt>> = sorted[s..].chunks(n).map(<[BigInt]>::to_vec).collect();
    let rows: Vec<IntPoly> = grid.iter().map(|row| from_roots(row)).collect();
    let columns: Vec<IntPoly> = (0..n)
        .map(|j| from_roots(&grid.iter().map(|row| row[j].clone()).collect::<Vec<_>>()))
        .collect();
    debug_assert_eq!(grid.len(), m);
    let mut family = rows.clone();
    family.extend(columns.iter().cloned());
    family.extend(linear_factors(&linear_roots));
    Layout { linear_roots, grid, rows, columns, family }
}

pub fn construct_grid(m: u64, n: u64) -> Result<GridCertificate> {
    if m < 1 || n < m {
        return Err(Error::InvalidArgument(format!("need 1 ≤ m ≤ n, got m = {m}, n = {n}")));
    }
    let p = next_prime(m * n);
    let s = p - m * n;
    let residue_system = safe_residue_system(p)?;
    let (mu, nu) = (m as usize, n as usize);
    let l = layout(mu, nu, s as usize, &residue_system);
    let product = LiftedProduct::build(l.family, (0..mu + nu).collect(), p)?;
    Ok(GridCertificate {
        m,
        n,
        p,
        s,
        residue_system,
        linear_roots: l.linear_roots,
        grid: l.grid.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect(),
        row_factors: l.rows,
        column_factors: l.columns,
        product,
        expected_lengths: vec![mu + 1, nu + 1],
        requested_elasticity: None,
    })
}

/// Smallest grid whose element has elasticity exactly `num/den`.
pub fn construct_elasticity(num: u64, den: u64) -> Result<GridCertificate> {
    if den == 0 || num <= den {
        return Err(Error::InvalidArgument(format!("elasticity {num}/{den} must exceed 1")));
    }
    let g = num.gcd(&den);
    let (num, den) = (num / g, den / g);
    let t = 2u64.div_ceil(den);
    let mut cert = construct_grid(den * t - 1, num * t - 1)?;
    cert.requested_elasticity = Some(format!("{num}/{den}"));
    Ok(cert)
}

fn parse_ratio(text: &str) -> Option<Ratio<u64>> {
    let (a, b) = text.split_once('/')?;
    let (a, b): (u64, u64) = (a.trim().parse().ok()?, b.trim().parse().ok()?);
    (b != 0).then(|| Ratio::new(a, b))
}

impl GridCertificate {
    pub(super) fn verify(&self, budget: usize, report: &mut Checklist) -> Option<LengthProfile> {
        let (m, n) = (self.m, self.n);
        if !report.push("parameters", 1 <= m && m <= n, format!("m = {m}, n = {n}")) {
            return None;
        }
        let p = next_prime(m * n);
        report.push("prime", self.p == p, format!("smallest prime above {} is {p}", m * n));
        report.push("s", self.s == p - m * n, format!("s = p − mn = {}", p - m * n));
        let rs = &self.residue_system;
        let check = rs.check();
        if !report.push(
            "residue_system",
            rs.p == p && rs.elements.len() as u64 == p && check.passed,
            format!("complete mod {} and incomplete mod every other prime: {}", rs.p, check.passed),
        ) {
            return None;
        }
        let (mu, nu) = (m as usize, n as usize);
        let l = layout(mu, nu, (p - m * n) as usize, rs);
        let grid: Vec<Vec<String>> = l.grid.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect();
        report.push(
            "layout",
            self.linear_roots == l.linear_roots && self.grid == grid,
            "smallest residues are the linear roots, the rest fill the grid row by row",
        );
        report.push("factors.rows", self.row_factors == l.rows, "row products");
        report.push("factors.columns", self.column_factors == l.columns, "column products");
        self.product.verify(&l.family, &(0..mu + nu).collect::<Vec<_>>(), budget, report);
        report.push(
            "expected_lengths",
            self.expected_lengths == [mu + 1, nu + 1],
            format!("{:?}", self.expected_lengths),
        );
        let profile = verify_element(&self.product.element, &p.into(), &self.expected_lengths, report);
        if let Some(text) = &self.requested_elasticity {
            let ok = match (parse_ratio(text), &profile) {
                (Some(r), Some(prof)) => prof.elasticity == r,
                _ => false,
            };
            report.push("elasticity", ok, format!("requested {text}"));
        }
        profile
    }
}
