//! Regression tests holding the code to the checked-in empirical constants.

use ntdesk_core::frozen;
use ntdesk_core::pretentious::{self, MultiplicativeFunction as Mf};
use ntdesk_core::progressions::CharacterTable;

#[test]
fn halasz_ratios_inside_frozen_bands() {
    for (f, t, (lo, hi)) in [
        (Mf::one(), 0.0, frozen::HALASZ_BAND_ONE),
        (Mf::mobius(), 0.0, frozen::HALASZ_BAND_MOBIUS),
        (Mf::nit(1.0), 1.0, frozen::HALASZ_BAND_NIT),
    ] {
        let r = pretentious::halasz_ratio(&f, 10_000, t).unwrap();
        assert!(r.ratio >= lo && r.ratio <= hi, "{}: {r:?}", f.name());
        assert!(r.evaluation_error < 1e-3 * r.series_mag);
    }
}

#[test]
fn self_pretending_nit_has_zero_distance() {
    let f = Mf::nit(1.0);
    assert!(pretentious::distance(&f, &f, 10_000).unwrap().value < 1e-7);
}

#[test]
fn mobius_stays_away_from_every_nit() {
    let m = pretentious::distance_min_t(&Mf::mobius(), 10_000, 2.0, 0.01).unwrap();
    assert!(m.d_min >= frozen::MOBIUS_DMIN_FLOOR, "{m:?}");
    assert!(m.d_min >= 1.0);
}

#[test]
fn mu_chi4_mean_small() {
    let t = CharacterTable::new(4).unwrap();
    let chi = t.characters().find(|c| !c.is_principal()).unwrap();
    let m = ntdesk_core::progressions::mu_chi_mean(&chi, 1_000_000).unwrap();
    assert!(m.norm() <= frozen::MU_CHI4_MEAN_BOUND, "{m}");
}
