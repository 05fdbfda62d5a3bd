//! Every cargo example runs to completion.

macro_rules! example {
    ($name:ident) => {
        #[allow(dead_code)]
        mod $name {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", stringify!($name), ".rs"));
        }

        #[test]
        fn $name() {
            $name::run().expect(concat!(stringify!($name), " example should run"));
        }
    };
}

example!(verify_families);
example!(solver);
example!(oracles);
example!(transforms);
example!(hardness_reduction);
example!(constructions);
example!(digraphs);
example!(bounds);
example!(instance_generation);
