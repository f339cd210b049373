//! The invertible extension T(w, z) on pairs of points in paired A and B
//! regions. T applies the letter T_B uses at z to both coordinates; its
//! inverse applies the letter T_A uses at w.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::regions::paired_family;
use crate::error::{domain, Result};
use crate::group::Letter;
use crate::planar::{classify_float, Classification, RegionKind, RegionLabel, Side};

/// Boundary tolerance for region tests on sampled pairs.
const PAIR_EPS: f64 = 1e-9;

/// w in A coordinates, z in B coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeodesicPair {
    pub w: Complex64,
    pub z: Complex64,
}

fn region(side: Side, z: Complex64) -> Option<RegionLabel> {
    let c = classify_float(side, z, PAIR_EPS);
    match c.class {
        Classification::Region(r) if !c.near_boundary => Some(r),
        _ => None,
    }
}

/// The region labels of a pair, if both coordinates are clear of boundaries
/// and the pair lies in the domain of T.
pub fn pair_regions(g: &GeodesicPair) -> Option<(RegionLabel, RegionLabel)> {
    let a = region(Side::A, g.w)?;
    let b = region(Side::B, g.z)?;
    paired_family(b).contains(&a).then_some((a, b))
}

fn apply(letter: Letter, g: &GeodesicPair) -> Result<GeodesicPair> {
    let m = letter.mobius();
    match (m.apply_complex(g.w), m.apply_complex(g.z)) {
        (Some(w), Some(z)) => Ok(GeodesicPair { w, z }),
        _ => domain("pair maps to infinity"),
    }
}

pub fn extension_step(g: &GeodesicPair) -> Result<GeodesicPair> {
    let Some((_, b)) = pair_regions(g) else {
        return domain("pair is not in the domain of the extension");
    };
    apply(b.letter(), g)
}

/// T⁻¹: the image of B_i × ℬ_i lies in A_i′, where T_A applies 𝔰_i⊥, and
/// the image of B_i′ × ℬ_i′ lies in A_i, where T_A applies 𝔰_i.
pub fn extension_inverse(g: &GeodesicPair) -> Result<GeodesicPair> {
    let Some(a) = region(Side::A, g.w) else {
        return domain("first coordinate is on a boundary");
    };
    apply(a.letter(), g)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub samples: usize,
    /// Draws rejected for lying outside the domain or near a boundary.
    pub rejected: usize,
    /// Images that break the region identities.
    pub violations: usize,
    /// Images too close to a boundary to classify.
    pub unresolved: usize,
    /// Largest |T⁻¹T(w,z) − (w,z)| relative to the pair's size.
    pub max_roundtrip_error: f64,
}

/// Expected image regions: B_i × ℬ_i goes to A_i′ × 𝒜_i′ and
/// B_i′ × ℬ_i′ to A_i × 𝒜_i.
fn image_ok(b: RegionLabel, image: &GeodesicPair) -> Option<bool> {
    let flipped = match b.kind {
        RegionKind::Circle => RegionKind::Triangle,
        RegionKind::Triangle => RegionKind::Circle,
    };
    let target = RegionLabel::new(Side::A, flipped, b.index);
    let a2 = region(Side::A, image.w)?;
    let b2 = region(Side::B, image.z)?;
    Some(a2 == target && paired_family(target).contains(&b2))
}

/// Monte Carlo sweep over pairs drawn from [-1, 2]².
pub fn extension_region_check(samples: usize, seed: u64) -> ExtensionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report =
        ExtensionReport { samples: 0, rejected: 0, violations: 0, unresolved: 0, max_roundtrip_error: 0.0 };
    let draw = |rng: &mut ChaCha8Rng| Complex64::new(rng.gen_range(-1.0..2.0), rng.gen_range(-1.0..2.0));
    while report.samples < samples {
        let g = GeodesicPair { w: draw(&mut rng), z: draw(&mut rng) };
        let Some((_, b)) = pair_regions(&g) else {
            report.rejected += 1;
            continue;
        };
        report.samples += 1;
        let Ok(image) = extension_step(&g) else {
            report.unresolved += 1;
            continue;
        };
        match image_ok(b, &image) {
            Some(true) => {}
            Some(false) => report.violations += 1,
            None => report.unresolved += 1,
        }
        if let Ok(back) = extension_inverse(&image) {
            let size = 1.0 + g.w.norm() + g.z.norm();
            let err = ((back.w - g.w).norm() + (back.z - g.z).norm()) / size;
            report.max_roundtrip_error = report.max_roundtrip_error.max(err);
        } else {
            report.unresolved += 1;
        }
    }
    report
}
