//! Invariants of a weighted K3 orbifold and of its Seifert link: orbifold
//! `b₂`, the diffeomorphism type `#k(S²×S³)`, and three independent counts
//! of the null η-Einstein moduli.

use serde::Serialize;
use thiserror::Error;

use crate::error::AnalysisError;
use crate::stratum::{self, Basket, WeightSystem, MAX_BASKET_TOTAL};
use crate::wps;

/// `b₂` of a smooth K3 surface.
pub const K3_B2: i64 = 22;
/// Smallest orbifold `b₂` realizable with only rational double points.
pub const MIN_ORBIFOLD_B2: i64 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum InvariantError {
    #[error("basket total {0} exceeds 19")]
    BasketTooLarge(u64),
    #[error("no projective K3 orbifold with only rational double points has b2 = 3")]
    BettiThree,
    #[error("orbifold b2 = {0} is outside 4..=22")]
    OrbifoldB2OutOfRange(i64),
    #[error("link b2 = {0} is below 3")]
    LinkB2OutOfRange(i64),
    #[error("rank of the polarized lattice would be 20; no moduli")]
    MaximalPicard,
    #[error("polynomial moduli count needs a K3 hypersurface")]
    NotK3Hypersurface,
}

pub fn is_k3(ws: &WeightSystem) -> bool {
    ws.is_k3()
}

/// `22 − Σ nᵢ`.
pub fn b2_orbifold(basket: &Basket) -> Result<i64, InvariantError> {
    let total = basket.total();
    if total > MAX_BASKET_TOTAL {
        return Err(InvariantError::BasketTooLarge(total));
    }
    Ok(K3_B2 - total as i64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LinkInvariants {
    pub b2_link: i64,
    /// `"#k(S2xS3)"`.
    pub diffeomorphism_type: String,
}

pub fn link_invariants(b2_orbifold: i64) -> Result<LinkInvariants, InvariantError> {
    match b2_orbifold {
        3 => Err(InvariantError::BettiThree),
        MIN_ORBIFOLD_B2..=K3_B2 => {
            let k = b2_orbifold - 1;
            Ok(LinkInvariants {
                b2_link: k,
                diffeomorphism_type: format!("#{k}(S2xS3)"),
            })
        }
        other => Err(InvariantError::OrbifoldB2OutOfRange(other)),
    }
}

/// Real dimension `2(b₂(L) − 2)` of the deformation space.
pub fn moduli_dim(b2_link: i64) -> Result<i64, InvariantError> {
    if b2_link < 3 {
        return Err(InvariantError::LinkB2OutOfRange(b2_link));
    }
    Ok(2 * (b2_link - 2))
}

/// `2·(h⁰(O(d)) − Σᵢ h⁰(O(wᵢ)))` for a K3 hypersurface `X_d ⊂ P(w)`.
pub fn moduli_dim_polynomial(ws: &WeightSystem) -> Result<i64, InvariantError> {
    if ws.codim() != 1 || !ws.is_k3() {
        return Err(InvariantError::NotK3Hypersurface);
    }
    let w = &ws.weights;
    let forms = wps::h0(w, ws.degrees[0]) as i64;
    let automorphisms: i64 = w.as_slice().iter().map(|&wi| wps::h0(w, wi) as i64).sum();
    Ok(2 * (forms - automorphisms))
}

/// `20 − rank M` with `rank M = 1 + Σ nᵢ` (polarization plus exceptional curves).
pub fn dolgachev_dim(basket: &Basket) -> Result<i64, InvariantError> {
    let total = basket.total();
    if total >= MAX_BASKET_TOTAL {
        return Err(InvariantError::MaximalPicard);
    }
    Ok(20 - (1 + total as i64))
}

/// The moduli space as an open subset of a projective space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodQuadric {
    /// `n` in `CPⁿ`, here `b₂(L) − 1`.
    pub ambient_dim: i64,
    pub condition: String,
    pub complex_dim: i64,
}

pub fn period_quadric_descriptor(b2_link: i64) -> Result<PeriodQuadric, InvariantError> {
    if b2_link < 3 {
        return Err(InvariantError::LinkB2OutOfRange(b2_link));
    }
    Ok(PeriodQuadric {
        ambient_dim: b2_link - 1,
        condition: format!(
            "{{[a] in H^2(M,C) : |([a],[a])| - |([a],[conj a])| > 0}} / C* in CP^{}",
            b2_link - 1
        ),
        complex_dim: b2_link - 2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct K3Record {
    pub ws: WeightSystem,
    pub basket: Basket,
    pub b2_orbifold: i64,
    pub b2_link: i64,
    pub k: i64,
    pub link: String,
    pub moduli_dim: i64,
    /// Only defined for hypersurfaces.
    pub moduli_dim_polynomial: Option<i64>,
    pub dolgachev_dim: i64,
    pub period_quadric: PeriodQuadric,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(untagged)]
pub enum RecordError {
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

impl K3Record {
    pub fn from_basket(ws: WeightSystem, basket: Basket) -> Result<Self, InvariantError> {
        let b2_orbifold = b2_orbifold(&basket)?;
        let link = link_invariants(b2_orbifold)?;
        let moduli = moduli_dim(link.b2_link)?;
        let dolgachev = dolgachev_dim(&basket)?;
        debug_assert_eq!(2 * dolgachev, moduli);
        let polynomial = (ws.codim() == 1).then(|| moduli_dim_polynomial(&ws)).transpose()?;
        Ok(K3Record {
            period_quadric: period_quadric_descriptor(link.b2_link)?,
            b2_orbifold,
            b2_link: link.b2_link,
            k: link.b2_link,
            link: link.diffeomorphism_type,
            moduli_dim: moduli,
            moduli_dim_polynomial: polynomial,
            dolgachev_dim: dolgachev,
            basket,
            ws,
        })
    }

    pub fn compute(ws: &WeightSystem) -> Result<Self, RecordError> {
        let basket = stratum::analyze(ws)?;
        Ok(Self::from_basket(ws.clone(), basket)?)
    }

    /// Whether the polynomial count (when defined) equals `2(k − 2)`.
    pub fn moduli_agree(&self) -> Option<bool> {
        self.moduli_dim_polynomial.map(|p| p == self.moduli_dim)
    }
}
