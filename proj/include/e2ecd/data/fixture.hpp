#pragma once

#include <filesystem>
#include <vector>

#include "e2ecd/data/corpus_io.hpp"
#include "e2ecd/data/types.hpp"

namespace e2ecd::data {

// Procedural stand-in for annotated satellite pairs: smooth terrain with
// polygonal "buildings", some of which are damaged, removed or new in the
// post-event image. The third pair changes only a 7x7 footprint (49 pixels)
// so it falls below the default positive-pixel filter.
struct FixtureCorpus {
  std::vector<RegisteredPair> pairs;
  std::vector<CorpusEntry> manifest;
};

FixtureCorpus make_fixture_corpus(int size = 128);

// Writes the pairs and manifest.csv in the synthesis input layout.
void write_fixture_corpus(const std::filesystem::path& dir, int size = 128);

}  // namespace e2ecd::data
