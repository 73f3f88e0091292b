//! Trajectory decomposition and reconstruction.
//!
//! A trajectory is equivalent to its sequence of vertical increments
//! `psi_tilde` (one entry per move: +1 up, -1 down, 0 horizontal). That
//! sequence splits bijectively into
//!
//! * `psi` — the nonzero entries, the increments of the *vertical skeleton*;
//! * `xi_tilde` — the waiting times: `xi_tilde[k]` is the length of the
//!   horizontal run immediately before the `(k+1)`-th vertical move, read
//!   down the rows of the worked-trajectory table, plus one trailing entry
//!   when the sequence ends in an unfinished run;
//! * `alpha` — 1 iff the sequence opens with a horizontal run (otherwise the
//!   leading run has length 0 and `alpha` is 0).
//!
//! From the skeleton one derives occupation times, return epochs, the time
//! change `T_n` (the instant just after the n-th vertical move), the signed
//! occupation sum `Delta_n`, and the horizontally embedded walk `X_n` with
//! `M_{T_n} = (X_n, Y_n)`.

use crate::env::OrientationEnvironment;
use crate::walk::Trajectory;
use crate::{Error, Result};

/// Vertical projections of the moves of a trajectory, values in `{-1,0,1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerticalIncrements(pub Vec<i8>);

impl VerticalIncrements {
    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `psi_tilde[k]` = vertical component of the k-th move.
pub fn extract_increments(trajectory: &Trajectory) -> VerticalIncrements {
    let psi_tilde = trajectory
        .positions()
        .windows(2)
        .map(|w| (w[1].y - w[0].y) as i8)
        .collect();
    VerticalIncrements(psi_tilde)
}

/// Skeleton increments, waiting times, and the leading-block flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Skeleton increments, each ±1.
    pub psi: Vec<i8>,
    /// Waiting times; `psi.len()` entries, plus a final one when the source
    /// sequence ends with an unfinished horizontal run.
    pub xi_tilde: Vec<u64>,
    /// 1 iff the source sequence opens with a horizontal run.
    pub alpha: u8,
}

impl Decomposition {
    /// Number of skeleton steps.
    pub fn skeleton_len(&self) -> usize {
        self.psi.len()
    }

    /// Length of the horizontal run consumed at skeleton time `k`, i.e.
    /// just before the `(k+1)`-th vertical move. Zero for `k` beyond the
    /// recorded runs.
    pub fn run_at(&self, k: usize) -> u64 {
        self.xi_tilde.get(k).copied().unwrap_or(0)
    }

    fn validate(&self) -> Result<()> {
        let m = self.psi.len();
        let bad = |msg: String| Err(Error::InvalidDecomposition(msg));
        if self.alpha > 1 {
            return bad(format!("alpha must be 0 or 1, got {}", self.alpha));
        }
        if let Some(&v) = self.psi.iter().find(|&&v| v != 1 && v != -1) {
            return bad(format!("psi entries must be +-1, got {v}"));
        }
        if self.xi_tilde.len() != m && self.xi_tilde.len() != m + 1 {
            return bad(format!(
                "xi_tilde holds {} entries for {m} skeleton steps (expected {m} or {})",
                self.xi_tilde.len(),
                m + 1
            ));
        }
        if self.xi_tilde.len() == m + 1 && self.xi_tilde[m] == 0 {
            return bad("trailing waiting time must be positive when present".into());
        }
        if m == 0 && self.xi_tilde.is_empty() && self.alpha == 1 {
            return bad("alpha = 1 requires a leading waiting time".into());
        }
        if let Some(&first) = self.xi_tilde.first() {
            if (first > 0) != (self.alpha == 1) {
                return bad(format!(
                    "alpha = {} inconsistent with leading waiting time {first}",
                    self.alpha
                ));
            }
        }
        Ok(())
    }
}

/// Splits a `psi_tilde` sequence into skeleton increments and waiting times.
pub fn decompose(increments: &VerticalIncrements) -> Decomposition {
    let mut psi = Vec::new();
    let mut xi_tilde = Vec::new();
    let mut run = 0u64;
    for &v in &increments.0 {
        debug_assert!((-1..=1).contains(&v));
        if v == 0 {
            run += 1;
        } else {
            psi.push(v);
            xi_tilde.push(run);
            run = 0;
        }
    }
    if run > 0 {
        xi_tilde.push(run);
    }
    let alpha = u8::from(xi_tilde.first().is_some_and(|&x| x > 0));
    Decomposition { psi, xi_tilde, alpha }
}

/// Exact inverse of [`decompose`]: inflates each waiting time back into its
/// run of zeros. Rejects structurally inconsistent input.
pub fn reconstruct(decomposition: &Decomposition) -> Result<VerticalIncrements> {
    decomposition.validate()?;
    let total: u64 = decomposition.xi_tilde.iter().sum();
    let mut out = Vec::with_capacity(decomposition.psi.len() + total as usize);
    for (k, &wait) in decomposition.xi_tilde.iter().enumerate() {
        out.extend(std::iter::repeat(0i8).take(wait as usize));
        if let Some(&v) = decomposition.psi.get(k) {
            out.push(v);
        }
    }
    Ok(VerticalIncrements(out))
}

/// Derived view of the vertical skeleton of a decomposition under a given
/// environment: path, return epochs, occupation times, time change, and the
/// signed occupation sum.
#[derive(Debug, Clone)]
pub struct SkeletonView {
    /// `Y_0..Y_m`, the skeleton path (`Y_0 = 0`).
    y: Vec<i64>,
    /// Return epochs `sigma_0 = 0 < sigma_1 < ..` with `Y_{sigma_j} = 0`.
    sigma: Vec<usize>,
    /// `T_n`, the trajectory instant just after the n-th vertical move.
    t: Vec<u64>,
    /// Partial sums of `eps(Y_k)`: `delta[n] = Delta_n`.
    delta: Vec<i64>,
    /// Partial sums of `(-1)^{Y_k}`, for the alternating occupation sum.
    alt: Vec<i64>,
}

/// Builds the skeleton view. Occupation-time queries are answered from the
/// stored path; storage is `O(m)` for a skeleton of `m` steps.
pub fn skeleton_view(
    decomposition: &Decomposition,
    env: &OrientationEnvironment,
) -> Result<SkeletonView> {
    let m = decomposition.skeleton_len();
    let mut y = Vec::with_capacity(m + 1);
    let mut sigma = Vec::new();
    let mut t = Vec::with_capacity(m + 1);
    let mut delta = Vec::with_capacity(m + 1);
    let mut alt = Vec::with_capacity(m + 1);

    y.push(0i64);
    sigma.push(0);
    t.push(0u64);
    delta.push(0i64);
    alt.push(0i64);

    for k in 0..m {
        let level = y[k];
        let eps = env.epsilon(level)?.as_i64();
        delta.push(delta[k] + eps);
        alt.push(alt[k] + if level & 1 == 0 { 1 } else { -1 });
        t.push(t[k] + 1 + decomposition.run_at(k));
        let next = level + decomposition.psi[k] as i64;
        y.push(next);
        if next == 0 {
            sigma.push(k + 1);
        }
    }

    Ok(SkeletonView { y, sigma, t, delta, alt })
}

impl SkeletonView {
    /// Skeleton path `Y_0..Y_m`.
    pub fn y(&self) -> &[i64] {
        &self.y
    }

    /// Number of skeleton steps `m`.
    pub fn len(&self) -> usize {
        self.y.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Return epochs including `sigma_0 = 0`.
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// `T_0..T_m`.
    pub fn t_times(&self) -> &[u64] {
        &self.t
    }

    /// Occupation time `eta_n(y)`: how many of `Y_0..Y_n` sit at level `y`.
    pub fn eta(&self, n: usize, level: i64) -> u64 {
        self.y[..=n].iter().filter(|&&v| v == level).count() as u64
    }

    /// Dense occupation table of `Y_0..Y_n`: returns `(min_level, counts)`.
    pub fn eta_table(&self, n: usize) -> (i64, Vec<u64>) {
        let slice = &self.y[..=n];
        let min = *slice.iter().min().expect("nonempty by construction");
        let max = *slice.iter().max().expect("nonempty by construction");
        let mut counts = vec![0u64; (max - min) as usize + 1];
        for &v in slice {
            counts[(v - min) as usize] += 1;
        }
        (min, counts)
    }

    /// Signed occupation sum `Delta_n = sum_y eps_y eta_{n-1}(y)`, equal to
    /// the running count `N_+ - N_-` over the first `n` skeleton steps.
    pub fn delta(&self, n: usize) -> i64 {
        self.delta[n]
    }

    /// `sum_y (-1)^y eta_{sigma_j - 1}(y)` at the j-th return epoch, `None`
    /// when the skeleton has fewer than `j` returns. Identically zero on
    /// every complete excursion.
    pub fn alternating_occupation_sum(&self, j: usize) -> Option<i64> {
        self.sigma.get(j).map(|&s| self.alt[s])
    }
}

/// Embedded walk positions `X_0..X_m`: the abscissa of the chain at the
/// instants `T_n`, so `M_{T_n} = (X_n, Y_n)`.
pub fn embedded_positions(
    decomposition: &Decomposition,
    env: &OrientationEnvironment,
) -> Result<Vec<i64>> {
    let m = decomposition.skeleton_len();
    let mut x = Vec::with_capacity(m + 1);
    let mut level = 0i64;
    x.push(0i64);
    for k in 0..m {
        let eps = env.epsilon(level)?.as_i64();
        x.push(x[k] + eps * decomposition.run_at(k) as i64);
        level += decomposition.psi[k] as i64;
    }
    Ok(x)
}

/// Per-epoch indicators for the return criterion: for each completed return
/// epoch `j >= 1`, whether the chain actually visits the origin during the
/// epoch, and whether the straddle interval `I(X_{sigma_j}, eps_0 Z_j)`
/// contains 0 (`Z_j` the realized, possibly truncated, horizontal run at the
/// epoch start). The two vectors are equal entry by entry.
pub fn straddle_epoch_indicators(
    trajectory: &Trajectory,
    env: &OrientationEnvironment,
) -> Result<(Vec<bool>, Vec<bool>)> {
    let decomposition = decompose(&extract_increments(trajectory));
    let view = skeleton_view(&decomposition, env)?;
    let x = embedded_positions(&decomposition, env)?;
    let eps0 = env.epsilon(0)?.as_i64();
    let total_moves = trajectory.len() as u64;

    let returns = view.sigma().len() - 1; // sigma_0 excluded
    let mut visited = vec![false; returns];
    let mut straddle = vec![false; returns];

    for (j, &s) in view.sigma().iter().enumerate().skip(1) {
        // straddle side: interval swept by the run at the epoch start
        let x_start = x[s];
        let z = decomposition.run_at(s) as i64;
        straddle[j - 1] = if eps0 == 1 {
            -z <= x_start && x_start <= 0
        } else {
            0 <= x_start && x_start <= z
        };

        // trajectory side: origin visits in [T_{sigma_j}, next epoch start)
        let lo = view.t_times()[s];
        let hi = view
            .sigma()
            .get(j + 1)
            .map(|&s2| view.t_times()[s2])
            .unwrap_or(total_moves + 1);
        visited[j - 1] = trajectory.positions()[lo as usize..(hi.min(total_moves + 1)) as usize]
            .iter()
            .any(|p| p.is_origin());
    }
    Ok((visited, straddle))
}

/// Counts origin returns (time 0 excluded) and straddle epochs of a
/// trajectory. The two coincide by the return-criterion identity.
pub fn straddle_return_count(
    trajectory: &Trajectory,
    env: &OrientationEnvironment,
) -> Result<(u64, u64)> {
    let (visited, straddle) = straddle_epoch_indicators(trajectory, env)?;
    let returns = trajectory.origin_visits() - 1;
    debug_assert_eq!(returns, visited.iter().filter(|&&b| b).count() as u64);
    Ok((returns, straddle.iter().filter(|&&b| b).count() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::env::{figure_environment, OrientationEnvironment};
    use crate::walk::{figure_moves, StepTag, Trajectory};

    fn figure_trajectory() -> Trajectory {
        Trajectory::from_moves(&figure_environment(), &figure_moves()).unwrap()
    }

    #[test]
    fn figure_increments() {
        let psi_tilde = extract_increments(&figure_trajectory());
        assert_eq!(
            psi_tilde.as_slice(),
            &[1, 0, 0, -1, -1, -1, 0, 0, 0, 0, 1, 0, 0, 0, 1]
        );
    }

    #[test]
    fn figure_decomposition() {
        let d = decompose(&extract_increments(&figure_trajectory()));
        assert_eq!(d.psi, vec![1, -1, -1, -1, 1, 1]);
        assert_eq!(d.xi_tilde, vec![0, 2, 0, 0, 4, 3]);
        assert_eq!(d.alpha, 0);
        let back = reconstruct(&d).unwrap();
        assert_eq!(back, extract_increments(&figure_trajectory()));
    }

    #[test]
    fn decompose_examples() {
        // all nonzero: no runs anywhere
        let d = decompose(&VerticalIncrements(vec![1, 1, -1]));
        assert_eq!((d.psi.as_slice(), d.xi_tilde.as_slice(), d.alpha), (&[1, 1, -1][..], &[0, 0, 0][..], 0));

        // leading run of two
        let d = decompose(&VerticalIncrements(vec![0, 0, 1]));
        assert_eq!((d.psi.as_slice(), d.xi_tilde.as_slice(), d.alpha), (&[1][..], &[2][..], 1));

        // unfinished trailing run gets its own entry
        let d = decompose(&VerticalIncrements(vec![1, 0, 0]));
        assert_eq!((d.psi.as_slice(), d.xi_tilde.as_slice(), d.alpha), (&[1][..], &[0, 2][..], 0));

        // degenerate inputs
        let d = decompose(&VerticalIncrements(vec![]));
        assert_eq!((d.psi.len(), d.xi_tilde.len(), d.alpha), (0, 0, 0));
        let d = decompose(&VerticalIncrements(vec![0, 0]));
        assert_eq!((d.psi.as_slice(), d.xi_tilde.as_slice(), d.alpha), (&[][..], &[2][..], 1));
    }

    #[test]
    fn waiting_times_plus_skeleton_cover_the_sequence() {
        let inc = extract_increments(&figure_trajectory());
        let d = decompose(&inc);
        let total: u64 = d.xi_tilde.iter().sum();
        assert_eq!(d.psi.len() as u64 + total, inc.len() as u64);
    }

    #[test]
    fn reconstruct_rejects_malformed() {
        // alpha flag contradicting the leading waiting time
        let bad = Decomposition { psi: vec![1], xi_tilde: vec![2], alpha: 0 };
        assert!(reconstruct(&bad).is_err());
        // zero trailing entry
        let bad = Decomposition { psi: vec![1], xi_tilde: vec![0, 0], alpha: 0 };
        assert!(reconstruct(&bad).is_err());
        // wrong arity
        let bad = Decomposition { psi: vec![1, -1], xi_tilde: vec![0], alpha: 0 };
        assert!(reconstruct(&bad).is_err());
        // psi out of domain
        let bad = Decomposition { psi: vec![2], xi_tilde: vec![0], alpha: 0 };
        assert!(reconstruct(&bad).is_err());
        // empty round trip stays fine
        let ok = Decomposition { psi: vec![], xi_tilde: vec![], alpha: 0 };
        assert_eq!(reconstruct(&ok).unwrap().as_slice(), &[] as &[i8]);
    }

    #[test]
    fn figure_skeleton_view() {
        let env = figure_environment();
        let d = decompose(&extract_increments(&figure_trajectory()));
        let v = skeleton_view(&d, &env).unwrap();
        assert_eq!(v.y(), &[0, 1, 0, -1, -2, -1, 0]);
        assert_eq!(v.sigma(), &[0, 2, 6]);
        assert_eq!(v.t_times(), &[0, 1, 4, 5, 6, 11, 15]);
        assert_eq!(v.eta(5, 0), 2);
        assert_eq!(v.eta(5, 1), 1);
        assert_eq!(v.eta(5, -1), 2);
        assert_eq!(v.eta(5, -2), 1);
        let (min, counts) = v.eta_table(5);
        assert_eq!(counts.iter().sum::<u64>(), 6);
        assert_eq!(counts[(0 - min) as usize], 2);
        // Delta_6 over the figure orientations: -2 + 1 + 2 - 1 = 0
        assert_eq!(v.delta(6), 0);
        assert_eq!(v.alternating_occupation_sum(1), Some(0));
        assert_eq!(v.alternating_occupation_sum(2), Some(0));
        assert_eq!(v.alternating_occupation_sum(3), None);
    }

    #[test]
    fn figure_embedded_positions() {
        let env = figure_environment();
        let d = decompose(&extract_increments(&figure_trajectory()));
        let x = embedded_positions(&d, &env).unwrap();
        assert_eq!(x, vec![0, 0, 2, 2, 2, -2, 1]);
        let v = skeleton_view(&d, &env).unwrap();
        // M_{T_n} = (X_n, Y_n) against the recorded trajectory
        let traj = figure_trajectory();
        for n in 0..=v.len() {
            let p = traj.positions()[v.t_times()[n] as usize];
            assert_eq!((p.x, p.y), (x[n], v.y()[n]), "n = {n}");
        }
        // X at the return epochs
        assert_eq!(x[v.sigma()[1]], 2);
        assert_eq!(x[v.sigma()[2]], 1);
    }

    #[test]
    fn all_zero_runs_give_constant_embedded_walk() {
        let d = decompose(&VerticalIncrements(vec![1, -1, 1, -1]));
        let x = embedded_positions(&d, &OrientationEnvironment::Alternate).unwrap();
        assert!(x.iter().all(|&v| v == 0));
    }

    #[test]
    fn figure_has_no_returns_and_no_straddles() {
        let env = figure_environment();
        let t = figure_trajectory();
        assert_eq!(straddle_return_count(&t, &env).unwrap(), (0, 0));
    }

    #[test]
    fn up_down_returns_once_and_straddles_once() {
        let env = OrientationEnvironment::Alternate;
        let t = Trajectory::from_moves(&env, &[StepTag::Up, StepTag::Down]).unwrap();
        assert_eq!(straddle_return_count(&t, &env).unwrap(), (1, 1));
    }
}
