#![no_main]
use libfuzzer_sys::fuzz_target;

use copspace::game::{read_trace, write_trace};

fuzz_target!(|data: &[u8]| {
    if let Ok(trace) = read_trace(data) {
        let mut out = Vec::new();
        write_trace(&trace, &mut out).unwrap();
        let again = read_trace(out.as_slice()).expect("written traces reload");
        assert_eq!(again, trace);
    }
});
