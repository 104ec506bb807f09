#![no_main]
use libfuzzer_sys::fuzz_target;

use copspace::discrete::GraphSpec;

fuzz_target!(|data: &str| {
    if let Ok(spec) = data.parse::<GraphSpec>() {
        let shown = spec.to_string();
        assert_eq!(shown.parse::<GraphSpec>().unwrap(), spec);
        // keep builds small
        let small = match spec {
            GraphSpec::Path(n) | GraphSpec::Cycle(n) | GraphSpec::Complete(n) => n <= 64,
            GraphSpec::Grid(r, c) => r.saturating_mul(c) <= 256,
            GraphSpec::Tree { n, .. } => n <= 256,
            GraphSpec::Petersen => true,
        };
        if small {
            let _ = spec.build(0);
        }
    }
});
