//! JSON wire formats. Rationals travel as `"p/q"` strings so nothing is
//! lost in transit.
//!
//! Torsion point: `{"angles": ["1/5", "2/5"]}`.
//! Polytope: `{"vertices": [["0","0"], ["1","0"], ...]}` (halfspaces are
//! attached on export for debugging, ignored on import).
//! Laurent polynomial:
//! `{"d": 2, "terms": [{"exp": [1,0], "re": "1", "im": "0"}, ...]}`.

use serde::{Deserialize, Serialize};

use crate::laurent::{GaussianRational, LaurentPolynomial};
use crate::polytope::Polytope;
use crate::ratio::{fmt_rat, parse_rat, Rat};
use crate::torus::TorsionPoint;
use crate::Result;

#[derive(Debug, Serialize, Deserialize)]
pub struct TorsionPointJson {
    pub angles: Vec<String>,
}

pub fn torsion_to_json(omega: &TorsionPoint) -> String {
    let doc = TorsionPointJson {
        angles: omega.angles().iter().map(fmt_rat).collect(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

pub fn torsion_from_json(text: &str) -> Result<TorsionPoint> {
    let doc: TorsionPointJson = serde_json::from_str(text)?;
    let angles: Result<Vec<Rat>> = doc.angles.iter().map(|s| parse_rat(s)).collect();
    TorsionPoint::new(&angles?)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HalfspaceJson {
    pub normal: Vec<String>,
    pub offset: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub vertices: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub halfspaces: Option<Vec<HalfspaceJson>>,
}

pub fn polytope_to_json(p: &Polytope) -> String {
    let doc = PolytopeJson {
        vertices: p
            .vertices()
            .iter()
            .map(|v| v.iter().map(fmt_rat).collect())
            .collect(),
        halfspaces: Some(
            p.facets()
                .iter()
                .map(|f| HalfspaceJson {
                    normal: f.halfspace.normal.iter().map(|n| n.to_string()).collect(),
                    offset: fmt_rat(&f.halfspace.offset),
                })
                .collect(),
        ),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}

pub fn polytope_from_json(text: &str) -> Result<Polytope> {
    let doc: PolytopeJson = serde_json::from_str(text)?;
    let mut vertices = Vec::with_capacity(doc.vertices.len());
    for row in &doc.vertices {
        let v: Result<Vec<Rat>> = row.iter().map(|s| parse_rat(s)).collect();
        vertices.push(v?);
    }
    Polytope::from_vertices(&vertices)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PointSetJson {
    pub d: usize,
    pub points: Vec<Vec<String>>,
}

pub fn pointset_to_json(s: &crate::discrepancy::PointSet) -> String {
    let doc = PointSetJson {
        d: s.dim(),
        points: s
            .points()
            .iter()
            .map(|p| p.iter().map(fmt_rat).collect())
            .collect(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

pub fn pointset_from_json(text: &str) -> Result<crate::discrepancy::PointSet> {
    let doc: PointSetJson = serde_json::from_str(text)?;
    let mut points = Vec::with_capacity(doc.points.len());
    for row in &doc.points {
        let p: Result<Vec<Rat>> = row.iter().map(|s| parse_rat(s)).collect();
        points.push(p?);
    }
    crate::discrepancy::PointSet::from_rational(doc.d, points)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LaurentTermJson {
    pub exp: Vec<i64>,
    pub re: String,
    pub im: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct LaurentJson {
    pub d: usize,
    pub terms: Vec<LaurentTermJson>,
}

pub fn laurent_to_json(p: &LaurentPolynomial) -> String {
    let doc = LaurentJson {
        d: p.dim(),
        terms: p
            .terms()
            .iter()
            .map(|(exp, c)| LaurentTermJson {
                exp: exp.clone(),
                re: fmt_rat(&c.re),
                im: fmt_rat(&c.im),
            })
            .collect(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

pub fn laurent_from_json(text: &str) -> Result<LaurentPolynomial> {
    let doc: LaurentJson = serde_json::from_str(text)?;
    let mut terms = Vec::with_capacity(doc.terms.len());
    for t in &doc.terms {
        terms.push((
            t.exp.clone(),
            GaussianRational::new(parse_rat(&t.re)?, parse_rat(&t.im)?),
        ));
    }
    LaurentPolynomial::new(doc.d, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::rat;

    #[test]
    fn torsion_round_trip() {
        let w = TorsionPoint::from_strs(&["1/5", "2/5"]).unwrap();
        let text = torsion_to_json(&w);
        assert_eq!(text, r#"{"angles":["1/5","2/5"]}"#);
        let back = torsion_from_json(&text).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn polytope_round_trip() {
        let p = Polytope::unit_box(2);
        let text = polytope_to_json(&p);
        let back = polytope_from_json(&text).unwrap();
        assert_eq!(back.vertices(), p.vertices());
        assert_eq!(back.facet_count(), p.facet_count());
    }

    #[test]
    fn laurent_round_trip() {
        let p = LaurentPolynomial::new(
            2,
            vec![
                (vec![1, 0], GaussianRational::new(rat(1, 1), rat(0, 1))),
                (vec![0, 0], GaussianRational::new(rat(-1, 2), rat(1, 3))),
            ],
        )
        .unwrap();
        let back = laurent_from_json(&laurent_to_json(&p)).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn malformed_inputs_error() {
        assert!(torsion_from_json("{}").is_err());
        assert!(torsion_from_json(r#"{"angles":["1/0"]}"#).is_err());
        assert!(polytope_from_json(r#"{"vertices":[]}"#).is_err());
    }
}
