//! Hamiltonians and initial operators on chains, square grids and graphs.
//!
//! Sites are 1-based. Grid site `(x, y)` (both 1-based) is
//! `(y - 1) * lx + x`, i.e. row-major with `x` fastest.

use serde::{Deserialize, Serialize};

use crate::error::{PauliError, Result};
use crate::operator::Operator;
use crate::string::{Bits, Pauli};

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    #[default]
    Open,
    Periodic,
}

/// Lattice geometry; `bonds` yields nearest-neighbour pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeSpec {
    Chain { n: usize, boundary: Boundary },
    Grid { lx: usize, ly: usize, boundary: Boundary },
    Graph { n: usize, edges: Vec<(usize, usize)> },
}

impl LatticeSpec {
    pub fn sites(&self) -> usize {
        match self {
            LatticeSpec::Chain { n, .. } | LatticeSpec::Graph { n, .. } => *n,
            LatticeSpec::Grid { lx, ly, .. } => lx * ly,
        }
    }

    pub fn bonds(&self) -> Vec<(usize, usize)> {
        match self {
            LatticeSpec::Chain { n, boundary } => chain_bonds(*n, 1, *boundary),
            LatticeSpec::Grid { lx, ly, boundary } => {
                let (h, v) = grid_bonds(*lx, *ly, *boundary);
                h.into_iter().chain(v).collect()
            }
            LatticeSpec::Graph { edges, .. } => edges.clone(),
        }
    }
}

/// Couplings shared by the builders. Defaults are `γ = 1/2`, `h_X = 0.5`,
/// `J = 1`, `g = 1`; an unset `Δ` is 2 for `xxz_nnn` and 1/2 for `xxz_2d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ModelParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    pub gamma: f64,
    pub h_x: f64,
    pub j: f64,
    pub g: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            delta: None,
            gamma: 0.5,
            h_x: 0.5,
            j: 1.0,
            g: 1.0,
        }
    }
}

pub fn grid_site(x: usize, y: usize, lx: usize) -> usize {
    (y - 1) * lx + x
}

/// Pairs `(i, i + range)`; periodic chains wrap around.
fn chain_bonds(n: usize, range: usize, boundary: Boundary) -> Vec<(usize, usize)> {
    match boundary {
        Boundary::Open => (1..=n.saturating_sub(range)).map(|i| (i, i + range)).collect(),
        Boundary::Periodic => (1..=n).map(|i| (i, (i - 1 + range) % n + 1)).collect(),
    }
}

/// Horizontal and vertical nearest-neighbour bonds of an `lx × ly` grid.
fn grid_bonds(lx: usize, ly: usize, boundary: Boundary) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let mut horizontal = Vec::new();
    let mut vertical = Vec::new();
    for y in 1..=ly {
        for x in 1..=lx {
            let s = grid_site(x, y, lx);
            if x < lx {
                horizontal.push((s, grid_site(x + 1, y, lx)));
            } else if boundary == Boundary::Periodic {
                horizontal.push((s, grid_site(1, y, lx)));
            }
            if y < ly {
                vertical.push((s, grid_site(x, y + 1, lx)));
            } else if boundary == Boundary::Periodic {
                vertical.push((s, grid_site(x, 1, lx)));
            }
        }
    }
    (horizontal, vertical)
}

fn require(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(PauliError::InvalidModel(msg.into()))
    }
}

fn add_bond<B: Bits>(h: &mut Operator<B>, c: f64, a: &str, i: usize, b: &str, j: usize) -> Result<()> {
    h.add_term(c, &[(a, i), (b, j)])
}

fn xxz_bonds<B: Bits>(h: &mut Operator<B>, bonds: &[(usize, usize)], scale: f64, delta: f64) -> Result<()> {
    for &(i, j) in bonds {
        add_bond(h, scale, "X", i, "X", j)?;
        add_bond(h, scale, "Y", i, "Y", j)?;
        if delta != 0.0 {
            add_bond(h, scale * delta, "Z", i, "Z", j)?;
        }
    }
    Ok(())
}

/// `Σ (X_i X_{i+1} + Y_i Y_{i+1})`.
pub fn xx_chain<B: Bits>(n: usize, boundary: Boundary) -> Result<Operator<B>> {
    require(n >= 2, format!("chain needs at least 2 sites, got {n}"))?;
    let mut h = Operator::try_new(n)?;
    xxz_bonds(&mut h, &chain_bonds(n, 1, boundary), 1.0, 0.0)?;
    Ok(h)
}

/// `Σ (X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1})`.
pub fn xxx_chain<B: Bits>(n: usize, boundary: Boundary) -> Result<Operator<B>> {
    require(n >= 2, format!("chain needs at least 2 sites, got {n}"))?;
    let mut h = Operator::try_new(n)?;
    xxz_bonds(&mut h, &chain_bonds(n, 1, boundary), 1.0, 1.0)?;
    Ok(h)
}

/// `Σ (X_i X_{i+1} - 1.05 Z_i + h_X X_i)`.
pub fn quantum_ising<B: Bits>(n: usize, h_x: f64, boundary: Boundary) -> Result<Operator<B>> {
    require(n >= 2, format!("chain needs at least 2 sites, got {n}"))?;
    let mut h = Operator::try_new(n)?;
    for (i, j) in chain_bonds(n, 1, boundary) {
        add_bond(&mut h, 1.0, "X", i, "X", j)?;
    }
    for i in 1..=n {
        h.add_term(-1.05, &[("Z", i)])?;
        if h_x != 0.0 {
            h.add_term(h_x, &[("X", i)])?;
        }
    }
    Ok(h)
}

/// `-J (Σ Z_i Z_{i+1} + g Σ X_i)`.
pub fn transverse_ising<B: Bits>(n: usize, j: f64, g: f64, boundary: Boundary) -> Result<Operator<B>> {
    require(n >= 2, format!("chain needs at least 2 sites, got {n}"))?;
    let mut h = Operator::try_new(n)?;
    for (a, b) in chain_bonds(n, 1, boundary) {
        add_bond(&mut h, -j, "Z", a, "Z", b)?;
    }
    for i in 1..=n {
        h.add_term(-j * g, &[("X", i)])?;
    }
    Ok(h)
}

/// XXZ chain with nearest and `γ`-weighted next-nearest couplings.
pub fn xxz_nnn<B: Bits>(n: usize, delta: f64, gamma: f64, boundary: Boundary) -> Result<Operator<B>> {
    require(n >= 3, format!("next-nearest chain needs at least 3 sites, got {n}"))?;
    let mut h = Operator::try_new(n)?;
    xxz_bonds(&mut h, &chain_bonds(n, 1, boundary), 1.0, delta)?;
    xxz_bonds(&mut h, &chain_bonds(n, 2, boundary), gamma, delta)?;
    Ok(h)
}

/// `Σ (X_{x,y} Z_{x+1,y} + Z_{x,y} X_{x,y+1})`.
pub fn xzzx_2d<B: Bits>(lx: usize, ly: usize, boundary: Boundary) -> Result<Operator<B>> {
    require(lx >= 2 && ly >= 2, format!("degenerate {lx}x{ly} lattice"))?;
    let mut h = Operator::try_new(lx * ly)?;
    let (horizontal, vertical) = grid_bonds(lx, ly, boundary);
    for (i, j) in horizontal {
        add_bond(&mut h, 1.0, "X", i, "Z", j)?;
    }
    for (i, j) in vertical {
        add_bond(&mut h, 1.0, "Z", i, "X", j)?;
    }
    Ok(h)
}

/// `Σ_<i,j> (X_i X_j + Y_i Y_j + Δ Z_i Z_j)` on a square grid.
pub fn xxz_2d<B: Bits>(lx: usize, ly: usize, delta: f64, boundary: Boundary) -> Result<Operator<B>> {
    require(lx >= 2 && ly >= 2, format!("degenerate {lx}x{ly} lattice"))?;
    let mut h = Operator::try_new(lx * ly)?;
    let bonds = LatticeSpec::Grid { lx, ly, boundary }.bonds();
    xxz_bonds(&mut h, &bonds, 1.0, delta)?;
    Ok(h)
}

/// Two-site coupling `c · A_i B_j` applied to every edge `(i, j)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BondTerm {
    pub letters: [Pauli; 2],
    pub coeff: f64,
}

/// One-site field `c · A_i` applied to every site.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldTerm {
    pub letter: Pauli,
    pub coeff: f64,
}

fn sym(p: Pauli) -> &'static str {
    match p {
        Pauli::I => "1",
        Pauli::X => "X",
        Pauli::Y => "Y",
        Pauli::Z => "Z",
    }
}

/// Operator on an arbitrary graph.
pub fn graph_model<B: Bits>(
    n: usize,
    edges: &[(usize, usize)],
    bond_terms: &[BondTerm],
    field_terms: &[FieldTerm],
) -> Result<Operator<B>> {
    let mut h = Operator::try_new(n)?;
    for &(i, j) in edges {
        for s in [i, j] {
            if s == 0 || s > n {
                return Err(PauliError::SiteOutOfRange { site: s, n });
            }
        }
        require(i != j, format!("self-loop on site {i}"))?;
        for b in bond_terms {
            add_bond(&mut h, b.coeff, sym(b.letters[0]), i, sym(b.letters[1]), j)?;
        }
    }
    for i in 1..=n {
        for f in field_terms {
            h.add_term(f.coeff, &[(sym(f.letter), i)])?;
        }
    }
    Ok(h)
}

/// Named initial operators (unnormalized):
///
/// * `sumX`: `Σ X_i`
/// * `energy_current_xxx`: `Σ (X_j Y_{j+1} - Y_j X_{j+1})`
/// * `ising_energy`: `Σ (1.05 X_i X_{i+1} + Z_i)`
/// * `<L><j>` such as `Z1` or `X4`: a single letter on site `j`
pub fn initial_operator<B: Bits>(name: &str, n: usize, boundary: Boundary) -> Result<Operator<B>> {
    let mut o = Operator::try_new(n)?;
    match name {
        "sumX" => {
            for i in 1..=n {
                o.add_term(1.0, &[("X", i)])?;
            }
        }
        "energy_current_xxx" => {
            for (i, j) in chain_bonds(n, 1, boundary) {
                add_bond(&mut o, 1.0, "X", i, "Y", j)?;
                add_bond(&mut o, -1.0, "Y", i, "X", j)?;
            }
        }
        "ising_energy" => {
            for (i, j) in chain_bonds(n, 1, boundary) {
                add_bond(&mut o, 1.05, "X", i, "X", j)?;
            }
            for i in 1..=n {
                o.add_term(1.0, &[("Z", i)])?;
            }
        }
        other => {
            let mut chars = other.chars();
            let letter = chars.next().and_then(|c| Pauli::from_char(c).ok());
            let site = chars.as_str().parse::<usize>().ok();
            match (letter, site) {
                (Some(l), Some(s)) if l != Pauli::I => o.add_term(1.0, &[(sym(l), s)])?,
                _ => return Err(PauliError::UnknownInitial(other.to_string())),
            }
        }
    }
    o.compress_in_place();
    Ok(o)
}

/// Extra single-site term, e.g. a field defect.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SiteTerm {
    pub letter: Pauli,
    pub site: usize,
    #[serde(default = "one")]
    pub coeff: f64,
}

fn one() -> f64 {
    1.0
}

/// JSON model descriptor.
///
/// ```json
/// {"model": "xxz_nnn", "N": 12, "params": {"delta": 2, "gamma": 0.5}, "boundary": "periodic"}
/// {"model": "xzzx_2d", "Lx": 3, "Ly": 3}
/// {"model": "graph", "N": 3, "edges": [[1, 2], [2, 3]],
///  "bond_terms": [{"letters": ["X", "X"], "coeff": 1.0}], "field_terms": []}
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelDescriptor {
    pub model: String,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(rename = "Lx", default, skip_serializing_if = "Option::is_none")]
    pub lx: Option<usize>,
    #[serde(rename = "Ly", default, skip_serializing_if = "Option::is_none")]
    pub ly: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<Boundary>,
    #[serde(default)]
    pub params: ModelParams,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bond_terms: Vec<BondTerm>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub field_terms: Vec<FieldTerm>,
    /// Added on top of the model, e.g. a single `X` field on one site.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub defects: Vec<SiteTerm>,
}

impl ModelDescriptor {
    pub fn chain(model: &str, n: usize) -> Self {
        Self {
            model: model.to_string(),
            n: Some(n),
            lx: None,
            ly: None,
            boundary: None,
            params: ModelParams::default(),
            edges: Vec::new(),
            bond_terms: Vec::new(),
            field_terms: Vec::new(),
            defects: Vec::new(),
        }
    }

    pub fn grid(model: &str, lx: usize, ly: usize) -> Self {
        Self {
            lx: Some(lx),
            ly: Some(ly),
            n: None,
            ..Self::chain(model, 0)
        }
    }

    fn is_grid(&self) -> bool {
        matches!(self.model.as_str(), "xzzx_2d" | "xxz_2d")
    }

    /// Boundary used when the descriptor does not set one: periodic for the
    /// next-nearest XXZ chain, open otherwise.
    pub fn effective_boundary(&self) -> Boundary {
        self.boundary.unwrap_or(if self.model == "xxz_nnn" {
            Boundary::Periodic
        } else {
            Boundary::Open
        })
    }

    pub fn sites(&self) -> Result<usize> {
        if self.is_grid() {
            match (self.lx, self.ly) {
                (Some(lx), Some(ly)) => Ok(lx * ly),
                _ => Err(PauliError::InvalidModel(format!("{} needs Lx and Ly", self.model))),
            }
        } else {
            self.n
                .ok_or_else(|| PauliError::InvalidModel(format!("{} needs N", self.model)))
        }
    }

    pub fn build<B: Bits>(&self) -> Result<Operator<B>> {
        let boundary = self.effective_boundary();
        let p = &self.params;
        let n = self.sites()?;
        let mut h = match self.model.as_str() {
            "xx" => xx_chain(n, boundary)?,
            "xxx" => xxx_chain(n, boundary)?,
            "quantum_ising" => quantum_ising(n, p.h_x, boundary)?,
            "transverse_ising" => transverse_ising(n, p.j, p.g, boundary)?,
            "xxz_nnn" => xxz_nnn(n, p.delta.unwrap_or(2.0), p.gamma, boundary)?,
            "xzzx_2d" => xzzx_2d(self.lx.unwrap(), self.ly.unwrap(), boundary)?,
            "xxz_2d" => xxz_2d(self.lx.unwrap(), self.ly.unwrap(), p.delta.unwrap_or(0.5), boundary)?,
            "graph" => graph_model(n, &self.edges, &self.bond_terms, &self.field_terms)?,
            other => return Err(PauliError::InvalidModel(format!("unknown model {other:?}"))),
        };
        for d in &self.defects {
            h.add_term(d.coeff, &[(sym(d.letter), d.site)])?;
        }
        h.compress_in_place();
        Ok(h)
    }
}
