#![no_main]

use libfuzzer_sys::fuzz_target;
use neuroevo::Genome;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(genome) = Genome::from_text(text) {
        genome.validate().expect("parsed genomes are valid");
        let again = Genome::from_text(&genome.to_text()).expect("serialized genome parses");
        assert_eq!(again.neurons, genome.neurons);
        assert_eq!(again.connections, genome.connections);
    }
});
