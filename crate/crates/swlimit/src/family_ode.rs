//! Depth-parameterized bound sweep for the root-insertion family.
//!
//! The pattern set {213, 231, 312, 321} forces every root-to-leaf path to
//! have its minimum at one of the last two positions; its tree counts obey
//! `t_{n+1} = t_n + f_n` interleaved with the exponential transform, so
//! arbitrarily deep exact data is cheap.  Sweeping the certified bound in
//! the data depth traces the engine's convergence on a family whose limit
//! is independently pinned down by its growth envelope.

use crate::bound::{limit_lower_bound, BoundRequest, LimitBound};
use crate::diagnostics::{ratio_diagnostic, RatioReport};
use crate::LimitError;
use forest_core::{Kind, PatternSet};

/// Bisection grid for the sweep: coarser than the default because the
/// family runs to depths where each extra grid bit costs a full series
/// evaluation over thousands of coefficients.
const SWEEP_TOL_BITS: u32 = 14;

#[derive(Clone, Debug)]
pub struct FamilyOdeReport {
    pub bound: LimitBound,
    pub ratios: RatioReport,
}

/// Certified bound for the root-insertion family from exact data of depth
/// `n_data`, together with the envelope table of its forest counts.
pub fn family_ode_limit(
    n_data: usize,
    m: Option<usize>,
    precision: u32,
) -> Result<FamilyOdeReport, LimitError> {
    if n_data == 0 {
        return Err(LimitError::BadRequest(
            "depth for the family sweep must be at least 1".to_string(),
        ));
    }
    let set = PatternSet::parse("213,231,312,321", Kind::Classical)
        .expect("family pattern set is well-formed");
    let counts = seqgen::closed_form_family(&set, n_data + 1)?;
    let mut req = BoundRequest::new(n_data).with_tol_bits(SWEEP_TOL_BITS);
    req.m = m;
    req.precision = precision;
    let bound = limit_lower_bound(&set, &counts.trees, &counts.forests, &req)?;
    let ratios = ratio_diagnostic(&counts.forests, n_data)?;
    Ok(FamilyOdeReport { bound, ratios })
}

#[cfg(test)]
mod tests {
    use super::*;
    use forest_core::Mode;
    use seqgen::count_bruteforce;

    #[test]
    fn closed_form_data_matches_enumeration_before_sweeping() {
        let set = PatternSet::parse("213,231,312,321", Kind::Classical).unwrap();
        let counts = seqgen::closed_form_family(&set, 6).unwrap();
        let t = count_bruteforce(&set, Mode::Trees, 6, 64).unwrap();
        let f = count_bruteforce(&set, Mode::Forests, 6, 64).unwrap();
        assert_eq!(counts.trees.values(), t.values());
        assert_eq!(counts.forests.values(), f.values());
    }

    #[test]
    fn shallow_sweep_is_monotone_and_above_floor() {
        let mut last = 0.0f64;
        for n in [1usize, 2, 4, 8, 16] {
            let report = family_ode_limit(n, Some(200), 256).unwrap();
            assert!(report.bound.proven);
            assert!(report.bound.bound_f64 > 0.36787944117144233 - 1e-15);
            assert!(
                report.bound.bound_f64 >= last - 1e-12,
                "depth sweep dipped at {}",
                n
            );
            last = report.bound.bound_f64;
        }
        // Depth 16 already clears 0.44 on the way to the limit.
        assert!(last > 0.44);
    }

    #[test]
    fn envelope_upper_track_stays_above_certified_track() {
        let report = family_ode_limit(24, Some(200), 256).unwrap();
        let lower = report.bound.bound_f64;
        for row in &report.ratios.rows {
            assert!(row.value > lower, "envelope dipped below the bound at {}", row.k);
        }
        assert!(report.ratios.increases.is_empty());
    }

    #[test]
    fn zero_depth_is_rejected() {
        assert!(matches!(
            family_ode_limit(0, None, 256),
            Err(LimitError::BadRequest(_))
        ));
    }
}
