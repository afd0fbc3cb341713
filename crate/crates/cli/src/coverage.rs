//! Which subcommand reaches each public library operation. Each operation
//! is listed once; `docs/coverage.md` is generated from this table.

/// `(module, operation, subcommand path)`.
pub const COVERAGE: &[(&str, &str, &str)] = &[
    ("numerics", "GaussLegendre / integrate_interval", "verify"),
    ("numerics", "CircleRule / SphereRule / mean_on_sphere", "verify"),
    ("numerics", "derivative / partial / gradient / laplacian", "verify"),
    ("numerics", "unit_sphere_area / factorial / double_factorial_odd / gamma_half_integer", "verify"),
    ("geometry", "complex_distance / complex_distance_sided", "gamma"),
    ("geometry", "classify_point", "gamma --side"),
    ("geometry", "to_cylindrical / rho_from_pq / zeta_from_pq", "gamma --coords"),
    ("geometry", "to_oblate / from_oblate", "gamma --coords"),
    ("geometry", "jacobian_volume / grad_pq", "gamma --coords"),
    ("potential", "newtonian", "potential --kind newtonian"),
    ("potential", "holomorphic_potential", "potential --kind holomorphic"),
    ("potential", "regularized_potential", "potential --kind regularized"),
    ("source", "singular_action", "source-action --method auto"),
    ("source", "singular_action_r3 / single_layer_r3", "source-action --method r3"),
    ("source", "singular_action_r4", "source-action --method r4"),
    ("source", "singular_action_even", "source-action --method even"),
    ("source", "singular_action_odd", "source-action --method odd"),
    ("source", "regularized_action", "source-action --method regularized"),
    ("source", "moments", "moments"),
    ("source", "centroid", "moments --x"),
    ("source", "descent_check", "descent-check"),
    ("source", "lambda_coeff", "verify"),
    ("wave", "solve_cauchy / solve_cauchy_values", "wave"),
    ("wave", "extend / slice_data", "wave --extend"),
    ("wave", "wave_residual / residual_at", "wave-verify"),
    ("clifford", "Multivector algebra / cauchy_kernel / cauchy_kernel_real", "clifford kernel"),
    ("clifford", "borel_pompeiu / dirac_apply", "clifford bp-check"),
    ("clifford", "extended_borel_pompeiu / regular_point", "clifford ebp-check"),
    ("clifford", "maxwell_extend / extend_field / current / dirac_squared", "clifford maxwell-demo"),
];

pub fn markdown() -> String {
    let mut s = String::from("# Coverage\n\nGenerated from `crates/cli/src/coverage.rs`.\n\n| module | operation | subcommand |\n|---|---|---|\n");
    for (m, op, cmd) in COVERAGE {
        s.push_str(&format!("| {m} | `{op}` | `cxpt {cmd}` |\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::commands::Cli;
    use clap::CommandFactory;
    use std::collections::HashSet;

    #[test]
    fn every_operation_appears_once() {
        let mut seen = HashSet::new();
        for (_, ops, _) in COVERAGE {
            for op in ops.split(" / ") {
                assert!(seen.insert(op), "{op} listed twice");
            }
        }
    }

    #[test]
    fn every_subcommand_and_flag_exists() {
        let root = Cli::command();
        for (_, _, path) in COVERAGE {
            let mut cmd = &root;
            let mut words = path.split_whitespace().peekable();
            while let Some(w) = words.peek() {
                if w.starts_with("--") {
                    break;
                }
                cmd = cmd.find_subcommand(w).unwrap_or_else(|| panic!("no subcommand {w} in {path}"));
                words.next();
            }
            let rest: Vec<&str> = words.collect();
            if let Some(flag) = rest.first() {
                let long = flag.trim_start_matches("--");
                let arg = cmd.get_arguments().find(|a| a.get_long() == Some(long));
                let arg = arg.unwrap_or_else(|| panic!("no flag {flag} in {path}"));
                if let Some(value) = rest.get(1) {
                    assert!(
                        arg.get_possible_values().iter().any(|p| p.get_name() == *value),
                        "{value} is not a value of {flag}"
                    );
                }
            }
        }
    }

    #[test]
    fn generated_table_is_current() {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/coverage.md");
        if std::env::var_os("CXPT_BLESS").is_some() {
            std::fs::write(path, markdown()).unwrap();
        }
        let on_disk = std::fs::read_to_string(path).unwrap_or_default();
        assert_eq!(on_disk, markdown(), "regenerate with CXPT_BLESS=1 cargo test -p cxpt-cli coverage");
    }
}
