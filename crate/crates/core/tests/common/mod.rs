#![allow(dead_code)]

pub mod oracle;

use k3census::census::{self, CatalogRow};
use k3census::WeightSystem;

/// Systems of both bundled catalogs as analyzed by the verifier, i.e. after
/// documented errata.
pub fn analyzed_systems() -> Vec<(String, u32, WeightSystem)> {
    let mut out = Vec::new();
    for (name, rows) in [("reid", census::reid_catalog()), ("fletcher", census::fletcher_catalog())] {
        let rep = census::verify_catalog(&rows);
        out.extend(rep.rows.into_iter().map(|r| (name.to_string(), r.id, r.analyzed_system)));
    }
    out
}

pub fn row(rows: &[CatalogRow], id: u32) -> &CatalogRow {
    rows.iter().find(|r| r.id == id).unwrap()
}

/// Library versus oracle point count on one edge or face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumCheck {
    pub stratum: Vec<usize>,
    pub library: u64,
    pub oracle: u64,
}

impl StratumCheck {
    pub fn agrees(&self) -> bool {
        self.library == self.oracle
    }
}

/// Every edge (and, in codimension 2, every face) with a nontrivial
/// stabilizer, counted both ways.
pub fn compare_with_oracle(ws: &WeightSystem, rng: &mut impl rand::Rng) -> Vec<StratumCheck> {
    use k3census::stratum::{edge_analysis, face_analysis};
    use num_integer::Integer;

    let w = ws.weights.as_slice();
    let n = w.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if w[i].gcd(&w[j]) < 2 {
                continue;
            }
            let library = edge_analysis(ws, [i, j]).expect("edge analysis").map_or(0, |e| e.multiplicity);
            let oracle = match oracle::edge_points(&[w[i], w[j]], &ws.degrees, rng) {
                oracle::EdgeOracle::Points(p) => p as u64,
                oracle::EdgeOracle::Contained => panic!("edge {i},{j} of {ws} is contained in X"),
            };
            out.push(StratumCheck { stratum: vec![i, j], library, oracle });
            if ws.codim() < 2 {
                continue;
            }
            for k in j + 1..n {
                if w[i].gcd(&w[j]).gcd(&w[k]) < 2 {
                    continue;
                }
                let library = face_analysis(ws, [i, j, k]).expect("face analysis").map_or(0, |e| e.multiplicity);
                let oracle = oracle::face_points(&[w[i], w[j], w[k]], ws.degrees[0], ws.degrees[1], rng)
                    .expect("face meets both equations") as u64;
                out.push(StratumCheck { stratum: vec![i, j, k], library, oracle });
            }
        }
    }
    out
}
