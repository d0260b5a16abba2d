//! JSON description of a surface, as read by the command-line tool.
//!
//! ```json
//! {"type": "gallery", "name": "hyperboloid_edlinger", "params": {"c": 2}}
//! {"type": "expression", "cx": "cos(u)", "cy": "sin(u)", "cz": "0",
//!  "dx": "-sin(u)", "dy": "cos(u)", "dz": "1", "domain": [0, 3]}
//! {"type": "invariants", "u": [...], "k": [...], "delta": [...], "sigma": [...]}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::curve::{CurveR3, Interval, Vec3};
use crate::error::{Error, Result};
use crate::surface::{
    gallery, standardize, surface_from_invariants, Frame, InvariantTriple, ReconstructOptions,
    StandardRuledSurface, StandardizeOptions,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SurfaceSpec {
    Gallery {
        name: String,
        #[serde(default)]
        params: BTreeMap<String, f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        domain: Option<[f64; 2]>,
    },
    /// Base curve `c` and director `d` of `x = c(u) + v·d(u)`.
    Expression {
        cx: String,
        cy: String,
        cz: String,
        dx: String,
        dy: String,
        dz: String,
        domain: [f64; 2],
    },
    /// Sampled `(k, δ, σ)`, interpolated by natural cubic splines.
    Invariants {
        u: Vec<f64>,
        k: Vec<f64>,
        delta: Vec<f64>,
        sigma: Vec<f64>,
    },
}

impl SurfaceSpec {
    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    /// Builds the surface. Expression specs must already be in standard
    /// form unless `standardize_input` is set.
    pub fn build(&self, standardize_input: bool) -> Result<StandardRuledSurface> {
        match self {
            SurfaceSpec::Gallery {
                name,
                params,
                domain,
            } => {
                let mut params = params.clone();
                if let Some([lo, hi]) = *domain {
                    params.insert("u_min".into(), lo);
                    params.insert("u_max".into(), hi);
                }
                gallery(name, &params)
            }
            SurfaceSpec::Expression {
                cx,
                cy,
                cz,
                dx,
                dy,
                dz,
                domain,
            } => {
                let domain = Interval::new(domain[0], domain[1])?;
                let c = CurveR3::parse([cx, cy, cz], domain)?;
                let d = CurveR3::parse([dx, dy, dz], domain)?;
                if standardize_input {
                    standardize(&c, &d, &StandardizeOptions::default())
                } else {
                    StandardRuledSurface::new(c, d)
                }
            }
            SurfaceSpec::Invariants { u, k, delta, sigma } => {
                let inv = InvariantTriple::from_samples(u, k, delta, sigma)?;
                let domain = Interval::new(u[0], u[u.len() - 1])?;
                surface_from_invariants(
                    &inv,
                    Frame::standard(),
                    Vec3::zeros(),
                    domain,
                    &ReconstructOptions::default(),
                )
            }
        }
    }
}
