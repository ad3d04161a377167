#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "casevo/core/log_record.hpp"
#include "casevo/election/vote.hpp"

namespace casevo {

// Streams a JSON-lines log one record at a time. Throws MalformedLogError
// (1-based line number) and EmptyLogError when the log has no records.
// Returns the number of records read.
std::size_t scan_log(std::istream& in, const std::function<void(const LogRecord&)>& visit);

// Per-round tallies from the log's vote records, in round order.
std::vector<RoundTally> recompute_tallies(std::istream& log, const CandidatePair& candidates = {},
                                          double theta = kDefaultNeutralThreshold);

using Stopwords = std::set<std::string, std::less<>>;

Stopwords default_stopwords();
// One word per line; blank lines and lines starting with '#' are skipped.
// Throws IoError.
Stopwords load_stopwords(const std::filesystem::path& path);

// Lowercase ASCII, split on anything not alphanumeric (bytes >= 0x80 stay
// inside words), drop tokens shorter than 2 bytes and stopwords.
std::vector<std::string> tokenize(std::string_view text, const Stopwords& stopwords = {});

struct WordCount {
  std::string candidate;
  std::string token;
  std::size_t count = 0;
  bool operator==(const WordCount&) const = default;
};

// Token counts over the "Overall view" texts in listen records, per
// candidate. Ordered by candidate (argument order), descending count, token.
std::vector<WordCount> word_frequencies(std::istream& log, const std::vector<std::string>& candidates,
                                        const Stopwords& stopwords);

// RFC 4180 field quoting.
std::string csv_field(std::string_view value);

// Header "candidate,token,count".
void write_wordfreq_csv(const std::vector<WordCount>& rows, std::ostream& out);

}  // namespace casevo
