/// Instrumentation of one solver run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SolverStats {
    /// Recursion nodes that did not branch.
    pub leaves: u64,
    /// Depth of the deepest node, root = 0.
    pub max_depth: usize,
    /// Recursive calls made.
    pub branches: u64,
    /// Weight of each node on the deepest root-to-leaf path.
    pub weight_trace: Vec<usize>,
    /// Leaves decided by the core projection.
    pub base_case_hits: u64,
}

impl SolverStats {
    pub(crate) fn leaf(weight: usize) -> Self {
        SolverStats {
            leaves: 1,
            weight_trace: vec![weight],
            ..Self::default()
        }
    }

    pub fn trace_strictly_decreasing(&self) -> bool {
        self.weight_trace.windows(2).all(|w| w[1] < w[0])
    }
}

pub fn stats_csv_header() -> &'static str {
    "instance_id,k,d,result,leaves,max_depth,branches,base_case_hits,wall_time_ms"
}

/// One line of the stats CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow<'a> {
    pub instance_id: &'a str,
    pub k: usize,
    pub d: usize,
    pub result: bool,
    pub stats: &'a SolverStats,
    pub wall_time_ms: f64,
}

impl StatsRow<'_> {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{:.3}",
            csv_field(self.instance_id),
            self.k,
            self.d,
            if self.result { "TRUE" } else { "FALSE" },
            self.stats.leaves,
            self.stats.max_depth,
            self.stats.branches,
            self.stats.base_case_hits,
            self.wall_time_ms
        )
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_format() {
        let stats = SolverStats {
            leaves: 4,
            max_depth: 2,
            branches: 6,
            weight_trace: vec![3, 1, 0],
            base_case_hits: 4,
        };
        let row = StatsRow {
            instance_id: "a,b",
            k: 3,
            d: 3,
            result: true,
            stats: &stats,
            wall_time_ms: 1.5,
        };
        assert_eq!(row.to_csv(), "\"a,b\",3,3,TRUE,4,2,6,4,1.500");
        assert_eq!(
            stats_csv_header().split(',').count(),
            row.to_csv().split(',').count() - 1
        );
        assert!(stats.trace_strictly_decreasing());
    }
}
