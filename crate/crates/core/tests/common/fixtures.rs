//! Frozen regression constants. Regenerate with
//! `cargo test --release --test freeze -- --ignored --nocapture`
//! and paste the printed values.

/// Discrete Lebesgue constant for eps=2, n=(1,2), kappa=(0,0), from a dense
/// 2001 x 2001 grid of the dense-solve Lagrange basis.
pub const DISCRETE_EPS2_N12: f64 = 2.333697904308;

/// max/min of `Lambda / prod ln(n_i + 1)` for eps=2, kappa=0, n=(k,k+1),
/// k in DISCRETE_KS, search grid 1025 with refinement.
pub const DISCRETE_SPREAD: f64 = 2.058265262984;
pub const DISCRETE_KS: [i64; 12] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12];

/// max/min of `L(gamma_bar(m)) / prod ln(m_i + 1)` over m in {2,4,8,16}^2,
/// dense-grid quadrature at 4x the adaptive resolution.
pub const FOURIER_GAMMABAR_SPREAD: f64 = 2.858424942754;
pub const GAMMABAR_MS: [i64; 4] = [2, 4, 8, 16];

/// Largest MZ ratio (p=2, 100 trials, default seed) over MZ_SWEEP.
pub const MZ_MAX: f64 = 1.986974114757;
pub const MZ_SWEEP: &[(i64, &[i64], &[i64])] = &[
    (2, &[1], &[0]),
    (2, &[2], &[0]),
    (1, &[5], &[1]),
    (2, &[9], &[1]),
    (2, &[1, 2], &[0, 0]),
    (2, &[2, 3], &[0, 1]),
    (1, &[3, 4], &[1, 0]),
    (2, &[4, 5], &[0, 0]),
    (1, &[7, 9], &[0, 0]),
    (2, &[1, 2, 3], &[0, 0, 0]),
    (1, &[2, 3, 5], &[1, 0, 1]),
];

/// Largest `(sum |h^| + tail) / ln(m nu + 1)` over nu in 1..=3, m in 2..=32,
/// cutoff `H_CUTOFF_FACTOR * m * nu`.
pub const H_RATIO_MAX: f64 = 0.536605509257;
pub const H_CUTOFF_FACTOR: usize = 4;

/// Relative slack when re-verifying frozen values.
pub const FROZEN_SLACK: f64 = 0.05;
