#![no_main]

use libfuzzer_sys::fuzz_target;
use neuroevo::evolution::Checkpoint;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(checkpoint) = Checkpoint::parse(text) {
        let again = Checkpoint::parse(&checkpoint.to_text()).expect("serialized checkpoint parses");
        assert_eq!(again.state.population, checkpoint.state.population);
        assert_eq!(again.state.map, checkpoint.state.map);
    }
});
