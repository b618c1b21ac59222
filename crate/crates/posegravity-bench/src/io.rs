//! JSON problem/solution schemas and the benchmark CSV row format.
//!
//! Floating-point values serialize as shortest round-trip decimals (the
//! default for both serde_json and `format!`).

use serde::{Deserialize, Serialize};

use posegravity::{
    GravityPrior, LineCorrespondence, PointCorrespondence, SolutionCase, SolutionSet, Vec3,
};

use crate::experiment::BenchSummary;

/// Input problem: a gravity measurement plus correspondences.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemFile {
    pub gravity: [f64; 3],
    #[serde(default)]
    pub points: Vec<PointEntry>,
    #[serde(default)]
    pub lines: Vec<LineEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointEntry {
    pub image: [f64; 3],
    pub world: [f64; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineEntry {
    pub normal: [f64; 3],
    pub point: [f64; 3],
    pub direction: [f64; 3],
}

impl ProblemFile {
    pub fn to_inputs(
        &self,
    ) -> (
        Vec<PointCorrespondence>,
        Vec<LineCorrespondence>,
        GravityPrior,
    ) {
        let points = self
            .points
            .iter()
            .map(|p| PointCorrespondence::new(Vec3::from_array(p.image), Vec3::from_array(p.world)))
            .collect();
        let lines = self
            .lines
            .iter()
            .map(|l| {
                LineCorrespondence::new(
                    Vec3::from_array(l.normal),
                    Vec3::from_array(l.point),
                    Vec3::from_array(l.direction),
                )
            })
            .collect();
        (
            points,
            lines,
            GravityPrior::new(Vec3::from_array(self.gravity)),
        )
    }
}

/// Output solutions.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionsFile {
    pub case: String,
    pub solutions: Vec<SolutionEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionEntry {
    /// Row-major rotation matrix.
    pub rotation: [[f64; 3]; 3],
    pub translation: [f64; 3],
    pub loss: f64,
}

pub fn case_name(case: SolutionCase) -> &'static str {
    match case {
        SolutionCase::General => "general",
        SolutionCase::Minimal => "minimal",
        SolutionCase::MinimalRecovered => "minimal_recovered",
        SolutionCase::Planar => "planar",
    }
}

impl From<&SolutionSet> for SolutionsFile {
    fn from(set: &SolutionSet) -> Self {
        SolutionsFile {
            case: case_name(set.case).to_string(),
            solutions: set
                .solutions
                .iter()
                .map(|s| SolutionEntry {
                    rotation: s.pose.rotation.matrix().0,
                    translation: s.pose.translation.as_array(),
                    loss: s.loss,
                })
                .collect(),
        }
    }
}

pub const CSV_HEADER: &str = "config,n_points,m_lines,eps,grav_noise_deg,trials,with_solution,median_rot_err_deg,median_trans_err,median_runtime_us";

/// One benchmark summary as a CSV row matching [`CSV_HEADER`].
pub fn csv_row(summary: &BenchSummary) -> String {
    let cfg = &summary.config;
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        cfg.configuration.name(),
        cfg.n_points,
        cfg.m_lines,
        cfg.epsilon_noise,
        cfg.gravity_noise_deg,
        cfg.trials,
        summary.trials_with_solution,
        summary.median_rot_err_deg,
        summary.median_trans_err,
        summary.median_runtime_us,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scene::{Configuration, SceneConfig};

    #[test]
    fn problem_json_round_trips() {
        let text = r#"{
            "gravity": [0.0, 1.0, 0.0],
            "points": [{"image": [0.1, 0.2, 1.0], "world": [1.0, 2.0, 3.0]}],
            "lines": [{"normal": [0.0, 1.0, 0.0], "point": [1.0, 0.0, 4.0], "direction": [1.0, 0.0, 0.0]}]
        }"#;
        let problem: ProblemFile = serde_json::from_str(text).unwrap();
        let (points, lines, gravity) = problem.to_inputs();
        assert_eq!(points.len(), 1);
        assert_eq!(lines.len(), 1);
        assert_eq!(gravity.vector(), Vec3::new(0.0, 1.0, 0.0));

        let back = serde_json::to_string(&problem).unwrap();
        let again: ProblemFile = serde_json::from_str(&back).unwrap();
        assert_eq!(again.points[0].world, problem.points[0].world);
    }

    #[test]
    fn points_only_problem_parses_without_lines_key() {
        let text =
            r#"{"gravity": [0, 1, 0], "points": [{"image": [0, 0, 1], "world": [0, 0, 5]}]}"#;
        let problem: ProblemFile = serde_json::from_str(text).unwrap();
        assert!(problem.lines.is_empty());
    }

    #[test]
    fn csv_row_matches_header_arity() {
        let cfg = SceneConfig::new(Configuration::ImagePlane, 2, 0);
        let summary = BenchSummary {
            config: cfg,
            trials_with_solution: 1,
            median_rot_err_deg: 0.5,
            median_trans_err: 0.25,
            median_runtime_us: 1.5,
        };
        let row = csv_row(&summary);
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
        assert!(row.starts_with("ImagePlane,2,0,"));
    }

    #[test]
    fn floats_serialize_shortest_round_trip() {
        let v = serde_json::to_string(&0.1_f64).unwrap();
        assert_eq!(v, "0.1");
        assert_eq!(format!("{}", 0.092204_f64), "0.092204");
    }
}
