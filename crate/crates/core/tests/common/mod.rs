//! Published measurement tables used as fitting oracles.
#![allow(dead_code)]

use islandperf::analysis::{SampleSeries, SeriesKind};

pub const CORES: [f64; 7] = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0];
pub const PROBLEMS: [&str; 4] = ["P-PEAKS 20-100", "P-PEAKS 200-1000", "VRP1", "VRP2"];
pub const GAPS: [u64; 5] = [16, 32, 64, 128, 256];

/// Median wall-clock seconds ("Real WCT"), gap 64.
pub const WCT: [[f64; 7]; 4] = [
    [6.21, 3.05, 1.53, 0.79, 0.41, 0.21, 0.12],
    [6.47, 3.39, 1.69, 0.89, 0.46, 0.23, 0.14],
    [4.04, 2.16, 1.11, 0.60, 0.31, 0.19, 0.15],
    [10.62, 5.59, 2.89, 1.57, 0.82, 0.46, 0.39],
];

/// Published rational3 wall-clock predictions and MAEs.
pub const WCT_PRED: [[f64; 7]; 4] = [
    [6.21, 3.06, 1.53, 0.78, 0.41, 0.22, 0.13],
    [6.48, 3.36, 1.72, 0.88, 0.45, 0.24, 0.13],
    [4.05, 2.15, 1.13, 0.60, 0.33, 0.19, 0.12],
    [10.62, 5.58, 2.92, 1.55, 0.85, 0.50, 0.33],
];
pub const WCT_MAE: [f64; 4] = [0.01, 0.01, 0.01, 0.03];

/// "Real SU" per problem, per gap in [`GAPS`] order.
pub const SU: [[[f64; 7]; 5]; 4] = [
    [
        [1.0, 2.02, 4.07, 7.74, 14.98, 29.48, 49.12],
        [1.0, 2.08, 4.16, 7.94, 15.48, 30.97, 50.88],
        [1.0, 2.06, 3.98, 7.75, 15.18, 30.17, 52.46],
        [1.0, 2.03, 4.04, 7.88, 15.05, 29.07, 51.41],
        [1.0, 1.99, 3.98, 7.91, 14.81, 28.85, 50.70],
    ],
    [
        [1.0, 1.95, 3.71, 7.10, 13.66, 26.71, 43.57],
        [1.0, 1.93, 3.80, 7.12, 14.13, 27.20, 44.14],
        [1.0, 1.91, 3.86, 7.35, 14.22, 28.05, 45.59],
        [1.0, 1.96, 4.01, 7.64, 14.78, 29.01, 47.51],
        [1.0, 1.98, 4.11, 7.89, 15.39, 29.94, 49.74],
    ],
    [
        [1.0, 1.92, 3.69, 6.95, 13.05, 21.70, 26.77],
        [1.0, 1.80, 3.43, 6.51, 12.83, 20.90, 25.86],
        [1.0, 1.92, 3.85, 6.89, 13.43, 21.23, 26.10],
        [1.0, 1.84, 3.58, 6.53, 12.45, 21.89, 24.96],
        [1.0, 1.99, 3.88, 7.21, 12.78, 22.67, 28.10],
    ],
    [
        [1.0, 1.85, 3.71, 6.60, 13.06, 22.43, 26.35],
        [1.0, 1.83, 3.46, 6.63, 12.13, 22.05, 25.37],
        [1.0, 1.91, 3.71, 6.79, 12.92, 22.39, 27.53],
        [1.0, 1.87, 3.68, 6.79, 13.15, 23.17, 28.02],
        [1.0, 1.92, 3.75, 6.90, 13.21, 25.33, 30.41],
    ],
];

/// Published rational3 speed-up predictions and MAEs at gap 64.
pub const SU_PRED: [[f64; 7]; 4] = [
    [0.82, 1.88, 3.97, 8.03, 15.72, 29.61, 52.58],
    [0.71, 1.76, 3.81, 7.73, 14.94, 27.23, 45.79],
    [0.54, 1.79, 4.05, 7.85, 13.40, 20.14, 26.64],
    [0.50, 1.70, 3.91, 7.70, 13.45, 20.77, 28.22],
];
pub const SU_MAE: [f64; 4] = [0.27, 0.37, 0.49, 0.67];

/// Published asymptotic speed-up limits, per problem, per gap.
pub const LIMITS: [[f64; 5]; 4] = [
    [167.68, 166.66, 228.77, 236.69, 226.40],
    [135.70, 132.04, 140.71, 149.78, 163.97],
    [41.15, 39.81, 39.01, 37.77, 44.88],
    [40.33, 39.12, 43.55, 44.31, 50.27],
];

pub fn wct_series(i: usize) -> SampleSeries {
    SampleSeries::from_xy(&CORES, &WCT[i], SeriesKind::WallClock).unwrap()
}

pub fn su_series(i: usize, gap_index: usize) -> SampleSeries {
    SampleSeries::from_xy(&CORES, &SU[i][gap_index], SeriesKind::SpeedUp).unwrap()
}
