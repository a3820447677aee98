#![allow(dead_code)]

macro_rules! example {
    ($module:ident, $test:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(quaternion_basics, quaternion_basics_runs, "quaternion_basics.rs");
example!(taylor_jets, taylor_jets_runs, "taylor_jets.rs");
example!(fueter_operators, fueter_operators_runs, "fueter_operators.rs");
example!(theorem_one, theorem_one_runs, "theorem_one.rs");
example!(hyperholomorphy, hyperholomorphy_runs, "hyperholomorphy.rs");
example!(integral_theorem, integral_theorem_runs, "integral_theorem.rs");
example!(generalized_regularity, generalized_regularity_runs, "generalized_regularity.rs");
example!(suite_report, suite_report_runs, "suite_report.rs");
