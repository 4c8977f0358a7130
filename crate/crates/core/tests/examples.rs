macro_rules! example {
    ($module:ident, $test:ident) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($module), ".rs"));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!(stringify!($module), " example should run"));
        }
    };
}

example!(expressions, expressions_example_runs);
example!(quadrature, quadrature_example_runs);
example!(curve_spec, curve_spec_example_runs);
example!(frenet_frame, frenet_frame_example_runs);
example!(slant_helix, slant_helix_example_runs);
example!(indicatrices, indicatrices_example_runs);
example!(bertrand_construction, bertrand_construction_example_runs);
example!(sphere_source, sphere_source_example_runs);
example!(corollaries, corollaries_example_runs);
example!(figures, figures_example_runs);
