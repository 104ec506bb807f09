#![no_main]
use libfuzzer_sys::fuzz_target;

use copspace::game::AgilitySchedule;

fuzz_target!(|data: &str| {
    if let Ok(s) = data.parse::<AgilitySchedule>() {
        let again: AgilitySchedule = s.to_string().parse().expect("display reparses");
        for n in [1, 2, 10, 1000] {
            let tau = s.tau(n);
            assert!(tau > 0.0 && tau.is_finite());
            assert_eq!(again.tau(n).to_bits(), tau.to_bits());
        }
    }
});
