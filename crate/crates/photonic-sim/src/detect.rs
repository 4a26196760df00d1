//! Lossy threshold detection: click-pattern statistics, loss-conditioned
//! partner states, and higher-order-emission contamination.
//!
//! Loss is binomial photon subtraction per detector mode (a beam splitter to
//! an unmonitored environment) applied before thresholding; a threshold
//! detector fires on any surviving photon. Detection is photon-number
//! diagonal per detector mode, so click probabilities depend only on the
//! occupation distribution, while conditional partner states keep the
//! coherences between loss branches that share the same lost occupation.

use std::collections::BTreeMap;

use num_complex::Complex64 as C64;
use qstate_core::DensityMatrix;

use crate::analysis::{apply_analysis, AnalysisSetting};
use crate::fock::FockVector;
use crate::mode::{
    detector_index, detector_mode, detector_name, Spatial, ALICE_EXITS, DETECTOR_COUNT,
    EXIT_MODES,
};
use crate::network::build_fanout_network;
use crate::pdc::{build_pdc_state, PdcConfig};
use crate::{PhotonicError, Result};

/// Per-detector efficiencies and the optional dark-count probability per
/// coincidence window.
#[derive(Clone, Debug)]
pub struct DetectorConfig {
    efficiency: [f64; DETECTOR_COUNT],
    dark_count_prob: f64,
}

impl DetectorConfig {
    pub fn uniform(eta: f64) -> Result<Self> {
        Self::new([eta; DETECTOR_COUNT], 0.0)
    }

    pub fn new(efficiency: [f64; DETECTOR_COUNT], dark_count_prob: f64) -> Result<Self> {
        for &eta in &efficiency {
            if !(eta > 0.0 && eta <= 1.0) {
                return Err(PhotonicError::BadEfficiency(eta));
            }
        }
        if !(0.0..=0.01).contains(&dark_count_prob) {
            return Err(PhotonicError::BadDarkCount(dark_count_prob));
        }
        Ok(Self {
            efficiency,
            dark_count_prob,
        })
    }

    pub fn with_dark_counts(mut self, dark_count_prob: f64) -> Result<Self> {
        if !(0.0..=0.01).contains(&dark_count_prob) {
            return Err(PhotonicError::BadDarkCount(dark_count_prob));
        }
        self.dark_count_prob = dark_count_prob;
        Ok(self)
    }

    pub fn efficiency(&self, detector: usize) -> f64 {
        self.efficiency[detector]
    }

    pub fn dark_count_prob(&self) -> f64 {
        self.dark_count_prob
    }

    /// Probability that detector `d` fires on `n` arriving photons:
    /// `1 - (1 - dark)(1 - eta)^n`.
    pub fn fire_probability(&self, detector: usize, n: u8) -> f64 {
        1.0 - (1.0 - self.dark_count_prob) * (1.0 - self.efficiency[detector]).powi(n as i32)
    }
}

/// Which of the 12 detectors fired, as a bitmask in the fixed order
/// a1H (bit 0), a1V, a2H, ..., b3V (bit 11).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClickPattern(pub u16);

impl ClickPattern {
    pub fn fired(self, detector: usize) -> bool {
        self.0 >> detector & 1 == 1
    }

    pub fn with(mut self, detector: usize) -> Self {
        self.0 |= 1 << detector;
        self
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }

    /// Clicks at one station, as (H fired, V fired).
    pub fn station(self, spatial: Spatial) -> (bool, bool) {
        let base = detector_index(spatial, crate::mode::Pol::H);
        (self.fired(base), self.fired(base + 1))
    }

    /// One click at each listed station and silence elsewhere.
    pub fn is_coincidence(self, stations: &[Spatial]) -> bool {
        for &s in EXIT_MODES.iter() {
            let (h, v) = self.station(s);
            let expected = stations.contains(&s);
            match (expected, h, v) {
                (true, true, false) | (true, false, true) => {}
                (false, false, false) => {}
                _ => return false,
            }
        }
        true
    }

    /// Build from Alice's three station outcomes (false = H port).
    pub fn from_alice_bits(bits: &[bool]) -> Self {
        let mut pattern = ClickPattern(0);
        for (station, &bar) in ALICE_EXITS.iter().zip(bits) {
            let pol = if bar {
                crate::mode::Pol::V
            } else {
                crate::mode::Pol::H
            };
            pattern = pattern.with(detector_index(*station, pol));
        }
        pattern
    }
}

impl std::fmt::Display for ClickPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names: Vec<String> = (0..DETECTOR_COUNT)
            .filter(|&d| self.fired(d))
            .map(detector_name)
            .collect();
        if names.is_empty() {
            write!(f, "(silent)")
        } else {
            write!(f, "{}", names.join("|"))
        }
    }
}

fn require_exit_only(fv: &FockVector) -> Result<()> {
    if fv.source_modes_empty() {
        Ok(())
    } else {
        Err(PhotonicError::SourceModesOccupied)
    }
}

/// Exact click-pattern distribution after analysis and lossy thresholding.
///
/// Probabilities over all patterns sum to the captured weight of the input
/// state. Cross terms between different occupations vanish because detection
/// is photon-number diagonal per detector mode.
pub fn click_distribution(
    fv: &FockVector,
    setting: &AnalysisSetting,
    det: &DetectorConfig,
) -> Result<BTreeMap<ClickPattern, f64>> {
    require_exit_only(fv)?;
    let analyzed = apply_analysis(fv, setting);
    let mut dense = vec![0.0f64; 1 << DETECTOR_COUNT];
    for (occ, amp) in analyzed.terms() {
        let weight = amp.norm_sqr();
        // expand over detectors, branching only where the outcome is
        // genuinely random
        let mut partial: Vec<(u16, f64)> = vec![(0, weight)];
        for d in 0..DETECTOR_COUNT {
            let n = occ[detector_mode(d).index()];
            let p = det.fire_probability(d, n);
            if p <= 0.0 {
                continue;
            }
            let bit = 1u16 << d;
            if p >= 1.0 {
                for (pattern, _) in partial.iter_mut() {
                    *pattern |= bit;
                }
                continue;
            }
            let mut next = Vec::with_capacity(partial.len() * 2);
            for (pattern, w) in partial {
                next.push((pattern, w * (1.0 - p)));
                next.push((pattern | bit, w * p));
            }
            partial = next;
        }
        for (pattern, w) in partial {
            dense[pattern as usize] += w;
        }
    }
    Ok(dense
        .into_iter()
        .enumerate()
        .filter(|(_, p)| *p > 0.0)
        .map(|(i, p)| (ClickPattern(i as u16), p))
        .collect())
}

/// Loss-conditioned partner state.
///
/// Applies binomial photon subtraction at every detector mode, conditions on
/// Alice's exact click pattern (each clicked detector keeps at least one
/// photon, each silent one loses everything) and on exactly one surviving
/// photon at each listed partner station (silence at unlisted ones), and
/// returns the joint probability together with the partner polarization
/// density matrix in the analysis frame (qubit i = partner_stations[i],
/// transmitted port = 0).
///
/// Loss branches are incoherent in the lost occupation and in Alice's
/// surviving occupation (her photons stay on her side); coherences between
/// partner port assignments survive within a branch, which is what makes the
/// eta = 1 limit reproduce the ideal post-selected states exactly.
pub fn conditional_partner_state(
    fv: &FockVector,
    alice_pattern: ClickPattern,
    partner_stations: &[Spatial],
    setting: &AnalysisSetting,
    det: &DetectorConfig,
) -> Result<Option<(f64, DensityMatrix)>> {
    require_exit_only(fv)?;
    if alice_pattern.0 >= 1 << 6 {
        return Err(PhotonicError::BadPattern(
            "alice pattern may use detectors a1H..a3V only".to_string(),
        ));
    }
    for s in ALICE_EXITS {
        let (h, v) = alice_pattern.station(s);
        if h && v {
            return Err(PhotonicError::BadPattern(format!(
                "both detectors of station {s:?} fire"
            )));
        }
    }
    if alice_pattern.count() == 0 {
        return Err(PhotonicError::BadPattern(
            "alice pattern holds no clicks".to_string(),
        ));
    }
    for s in partner_stations {
        if !crate::mode::PARTNER_EXITS.contains(s) {
            return Err(PhotonicError::BadPattern(format!(
                "{s:?} is not a partner station"
            )));
        }
    }
    // qubit order follows the fixed exit order, so require it up front
    if !partner_stations
        .windows(2)
        .all(|w| w[0].exit_position() < w[1].exit_position())
    {
        return Err(PhotonicError::BadPattern(
            "partner stations must be listed in exit order b1, b2, b3".to_string(),
        ));
    }

    let analyzed = apply_analysis(fv, setting);
    let n_partner = partner_stations.len();
    let qdim = 1usize << n_partner;

    // group key: lost occupation over the 12 detectors plus Alice's surviving
    // occupation over her 6; within a group amplitudes stay coherent
    let mut groups: BTreeMap<[u8; 18], Vec<C64>> = BTreeMap::new();

    'term: for (occ, amp) in analyzed.terms() {
        // Alice side: surviving counts at clicked detectors get enumerated,
        // silent detectors must lose their entire occupation
        let mut clicked: Vec<(usize, u8)> = Vec::new(); // (detector, n)
        for d in 0..6 {
            let n = occ[detector_mode(d).index()];
            if alice_pattern.fired(d) {
                if n == 0 {
                    continue 'term;
                }
                clicked.push((d, n));
            }
        }
        // partner side: exactly one survivor at listed stations, none
        // elsewhere, at most one branch choice (H or V port) per station
        let mut partner_port_choices: Vec<Vec<(usize, u8)>> = Vec::new(); // per station: (port detector, n at that port)
        let mut partner_fixed: Vec<(usize, u8)> = Vec::new(); // detectors losing everything
        for (pos, &s) in EXIT_MODES.iter().enumerate().skip(3) {
            let dh = pos * 2;
            let dv = pos * 2 + 1;
            let nh = occ[detector_mode(dh).index()];
            let nv = occ[detector_mode(dv).index()];
            if partner_stations.contains(&s) {
                let mut choices = Vec::new();
                if nh >= 1 {
                    choices.push((dh, nh));
                }
                if nv >= 1 {
                    choices.push((dv, nv));
                }
                if choices.is_empty() {
                    continue 'term;
                }
                partner_port_choices.push(choices);
            } else {
                if nh > 0 {
                    partner_fixed.push((dh, nh));
                }
                if nv > 0 {
                    partner_fixed.push((dv, nv));
                }
            }
        }
        // amplitude factor for detectors that lose everything
        let mut base_amp = *amp;
        for d in 0..6 {
            let n = occ[detector_mode(d).index()];
            if !alice_pattern.fired(d) && n > 0 {
                base_amp *= (1.0 - det.efficiency(d)).powi(n as i32).sqrt();
            }
        }
        for &(d, n) in &partner_fixed {
            base_amp *= (1.0 - det.efficiency(d)).powi(n as i32).sqrt();
        }

        // enumerate Alice survivals
        let mut alice_branches: Vec<(Vec<(usize, u8)>, f64)> = vec![(Vec::new(), 1.0)];
        for &(d, n) in &clicked {
            let eta = det.efficiency(d);
            let mut next = Vec::new();
            for m in 1..=n {
                let factor = binomial_f(n, m).sqrt()
                    * eta.sqrt().powi(m as i32)
                    * (1.0 - eta).sqrt().powi((n - m) as i32);
                if factor == 0.0 {
                    continue;
                }
                for (survivals, f) in &alice_branches {
                    let mut s2 = survivals.clone();
                    s2.push((d, m));
                    next.push((s2, f * factor));
                }
            }
            alice_branches = next;
        }

        // enumerate partner port assignments (exactly one survivor each)
        let mut port_branches: Vec<(Vec<(usize, u8)>, f64)> = vec![(Vec::new(), 1.0)];
        for choices in &partner_port_choices {
            let mut next = Vec::new();
            for &(d, n) in choices {
                let eta = det.efficiency(d);
                // one of n photons survives at this port, the sibling port
                // holds nothing (its photons would land in `choices` too)
                let factor = binomial_f(n, 1).sqrt()
                    * eta.sqrt()
                    * (1.0 - eta).sqrt().powi((n - 1) as i32);
                for (ports, f) in &port_branches {
                    let mut p2 = ports.clone();
                    p2.push((d, n));
                    next.push((p2, f * factor));
                }
            }
            port_branches = next;
        }

        for (alice_surv, af) in &alice_branches {
            for (ports, pf) in &port_branches {
                // both ports of a partner station occupied: the unchosen
                // port must lose everything
                let mut port_amp = 1.0f64;
                let mut ok = true;
                for (choices, &(chosen, _)) in partner_port_choices.iter().zip(ports.iter()) {
                    for &(d, n) in choices {
                        if d != chosen {
                            // entire occupation of the sibling port is lost
                            port_amp *= (1.0 - det.efficiency(d)).sqrt().powi(n as i32);
                            if port_amp == 0.0 {
                                ok = false;
                            }
                        }
                    }
                }
                if !ok {
                    continue;
                }
                // group key: lost occupation (n - survived) on 12 detectors
                // plus Alice's survived occupation on 6
                let mut key = [0u8; 18];
                let mut survived = [0u8; DETECTOR_COUNT];
                for &(d, m) in alice_surv {
                    survived[d] = m;
                }
                for &(d, _) in ports {
                    survived[d] = 1;
                }
                for d in 0..DETECTOR_COUNT {
                    let n = occ[detector_mode(d).index()];
                    key[d] = n - survived[d];
                }
                key[12..18].copy_from_slice(&survived[..6]);

                // qubit index from the chosen ports
                let mut qindex = 0usize;
                for (q, &(d, _)) in ports.iter().enumerate() {
                    if d % 2 == 1 {
                        qindex |= 1 << (n_partner - 1 - q);
                    }
                }
                let entry = groups
                    .entry(key)
                    .or_insert_with(|| vec![C64::new(0.0, 0.0); qdim]);
                entry[qindex] += base_amp * af * pf * port_amp;
            }
        }
    }

    let probability: f64 = groups
        .values()
        .flat_map(|v| v.iter().map(|a| a.norm_sqr()))
        .sum();
    if probability < 1e-15 {
        return Ok(None);
    }
    let branches: Vec<Vec<C64>> = groups.into_values().collect();
    let rho = DensityMatrix::from_unnormalized_branches(n_partner, &branches)
        .map_err(PhotonicError::Core)?;
    Ok(Some((probability, rho)))
}

fn binomial_f(n: u8, k: u8) -> f64 {
    fn fact(n: u8) -> f64 {
        (1..=n as u64).map(|x| x as f64).product()
    }
    fact(n) / (fact(k) * fact(n - k))
}

/// Accepted-coincidence statistics for the photon-accounting acceptance:
/// exactly one detected photon per listed exit mode and nothing detected
/// anywhere else.
#[derive(Clone, Copy, Debug)]
pub struct CoincidenceStats {
    /// Probability of an accepted coincidence.
    pub accepted: f64,
    /// Portion of `accepted` fed by emission orders beyond the protocol
    /// order (extra pairs thinned down by loss).
    pub contaminated: f64,
}

impl CoincidenceStats {
    pub fn fraction(&self) -> f64 {
        if self.accepted <= 0.0 {
            0.0
        } else {
            self.contaminated / self.accepted
        }
    }
}

/// Compute the coincidence statistics for the 4- or 6-fold protocol on the
/// default fan-out. The acceptance event is photon-accounting (one detected
/// photon per designated exit mode, none elsewhere); polarization analysis
/// drops out because loss and acceptance are polarization-symmetric per
/// station when both detectors of a station share an efficiency.
pub fn coincidence_statistics(
    cfg: &PdcConfig,
    det: &DetectorConfig,
    coincidence_order: usize,
    splittings: &[f64],
) -> Result<CoincidenceStats> {
    let designated: Vec<Spatial> = match coincidence_order {
        4 => vec![Spatial::A1, Spatial::A2, Spatial::B1, Spatial::B2],
        6 => EXIT_MODES.to_vec(),
        other => {
            return Err(PhotonicError::BadConfig(format!(
                "coincidence order {other} is not 4 or 6"
            )))
        }
    };
    if (cfg.p_max as usize) < coincidence_order / 2 + 1 {
        return Err(PhotonicError::BadConfig(format!(
            "p_max = {} cannot expose contamination of the {coincidence_order}-fold coincidence",
            cfg.p_max
        )));
    }
    let source = build_pdc_state(cfg)?;
    let fanned = build_fanout_network(&source, splittings)?;

    let mut accepted = 0.0;
    let mut contaminated = 0.0;
    for (occ, amp) in fanned.terms() {
        let weight = amp.norm_sqr();
        let total: u32 = occ.iter().map(|&n| n as u32).sum();
        let mut p_term = weight;
        for (pos, &s) in EXIT_MODES.iter().enumerate() {
            let dh = pos * 2;
            let dv = pos * 2 + 1;
            let nh = occ[detector_mode(dh).index()];
            let nv = occ[detector_mode(dv).index()];
            let eta_h = det.efficiency(dh);
            let eta_v = det.efficiency(dv);
            let miss = |eta: f64, n: u8| (1.0 - eta).powi(n as i32);
            if designated.contains(&s) {
                // exactly one photon detected at this station
                let p_one = nh as f64 * eta_h * miss(eta_h, nh.saturating_sub(1)) * miss(eta_v, nv)
                    + nv as f64 * eta_v * miss(eta_v, nv.saturating_sub(1)) * miss(eta_h, nh);
                p_term *= p_one;
            } else {
                p_term *= miss(eta_h, nh) * miss(eta_v, nv);
            }
            if p_term == 0.0 {
                break;
            }
        }
        if p_term > 0.0 {
            accepted += p_term;
            if total as usize > coincidence_order {
                contaminated += p_term;
            }
        }
    }
    Ok(CoincidenceStats {
        accepted,
        contaminated,
    })
}

/// Fraction of accepted coincidences fed by emission orders beyond
/// `coincidence_order / 2`, on the default 50/50 fan-out.
pub fn contamination_fraction(
    cfg: &PdcConfig,
    det: &DetectorConfig,
    coincidence_order: usize,
) -> Result<f64> {
    let splittings = crate::network::default_splittings();
    Ok(coincidence_statistics(cfg, det, coincidence_order, &splittings)?.fraction())
}
