//! Per-prime bound summary, emitted as one JSON object per line.

use serde::Serialize;

use super::{b1, b2, corollary1_bound, theorem1_bound};
use crate::modpoly::HeightReport;

/// Key names are part of the output format. Margins are `bound - h_exact`
/// and are omitted when no exact height is known.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsRecord {
    pub l: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_exact: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h2: Option<u32>,
    pub theorem1: f64,
    pub corollary1: f64,
    #[serde(rename = "B1")]
    pub b1: f64,
    #[serde(rename = "B2", skip_serializing_if = "Option::is_none")]
    pub b2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem1_margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corollary1_margin: Option<f64>,
    #[serde(rename = "B1_margin", skip_serializing_if = "Option::is_none")]
    pub b1_margin: Option<f64>,
    /// Present from l = 3600 on.
    #[serde(rename = "B2_le_theorem1", skip_serializing_if = "Option::is_none")]
    pub b2_le_theorem1: Option<bool>,
}

pub fn bounds_record(l: u64, height: Option<&HeightReport>) -> BoundsRecord {
    let lf = l as f64;
    let th = theorem1_bound(lf);
    let co = corollary1_bound(lf);
    let b1v = b1(lf.max(2.0)).map(|b| b.total).unwrap_or(f64::NAN);
    let b2v = b2(lf).ok().map(|b| b.total);
    let h = height.map(|r| r.h);
    BoundsRecord {
        l,
        h_exact: h,
        h2: height.map(|r| r.h2),
        theorem1: th,
        corollary1: co,
        b1: b1v,
        b2: b2v,
        theorem1_margin: h.map(|h| th - h),
        corollary1_margin: h.map(|h| co - h),
        b1_margin: h.map(|h| b1v - h),
        b2_le_theorem1: b2v.map(|b| b <= th),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_and_omissions() {
        let r = bounds_record(3607, None);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["B2_le_theorem1"], true);
        assert!(v.get("h_exact").is_none());
        let r = bounds_record(11, None);
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert!(v.get("B2").is_none() && v.get("B2_le_theorem1").is_none());
        assert!((r.theorem1 - 445.6).abs() < 0.05);
    }
}
