#include "casevo/report/report.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "casevo/core/errors.hpp"

namespace casevo {

std::size_t scan_log(std::istream& in, const std::function<void(const LogRecord&)>& visit) {
  std::string line;
  std::size_t lineno = 0;
  std::size_t records = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) throw MalformedLogError(lineno, "not valid JSON");
    LogRecord record;
    try {
      record = record_from_json(j);
    } catch (const ParseError& e) {
      throw MalformedLogError(lineno, e.what());
    }
    ++records;
    visit(record);
  }
  if (in.bad()) throw IoError("read error after line " + std::to_string(lineno));
  if (records == 0) throw EmptyLogError("log contains no records");
  return records;
}

std::vector<RoundTally> recompute_tallies(std::istream& log, const CandidatePair& candidates, double theta) {
  std::map<int, std::vector<VoteRecord>> by_round;
  std::map<int, std::vector<std::string>> voters;
  std::vector<std::string> names{candidates.first, candidates.second};
  std::size_t lineno = 0;
  scan_log(log, [&](const LogRecord& r) {
    ++lineno;
    if (r.type != RecordType::Vote) return;
    CandidateScores scores;
    try {
      scores = parse_scores(r.item, names);
    } catch (const ParseError& e) {
      throw MalformedLogError(lineno, std::string("vote record: ") + e.what());
    }
    const auto support = classify(scores, candidates, theta);
    by_round[r.ts].push_back(VoteRecord{r.owner, r.ts, std::move(scores), support});
    voters[r.ts].push_back(r.owner);
  });
  std::vector<RoundTally> out;
  for (const auto& [round, votes] : by_round) out.push_back(tally(votes, round, voters[round]));
  return out;
}

Stopwords default_stopwords() {
  return {"a",     "about", "after", "again", "all",    "also",  "am",    "an",    "and",   "any",   "are",
          "as",    "at",    "be",    "been",  "before", "being", "but",   "by",    "can",   "could", "did",
          "do",    "does",  "for",   "from",  "had",    "has",   "have",  "he",    "her",   "his",   "how",
          "i",     "if",    "in",    "into",  "is",     "it",    "its",   "just",  "me",    "more",  "most",
          "my",    "no",    "not",   "of",    "on",     "or",    "our",   "out",   "over",  "she",   "should",
          "so",    "some",  "such",  "than",  "that",   "the",   "their", "them",  "then",  "there", "these",
          "they",  "this",  "those", "to",    "too",    "up",    "very",  "was",   "we",    "were",  "what",
          "when",  "which", "while", "who",   "will",   "with",  "would", "you",   "your"};
}

Stopwords load_stopwords(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stopwords '" + path.string() + "'");
  Stopwords words;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    std::string w = line.substr(first, last - first + 1);
    std::transform(w.begin(), w.end(), w.begin(), [](unsigned char c) {
      return c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c);
    });
    words.insert(std::move(w));
  }
  return words;
}

std::vector<std::string> tokenize(std::string_view text, const Stopwords& stopwords) {
  std::vector<std::string> out;
  std::string cur;
  const auto flush = [&] {
    if (cur.size() >= 2 && !stopwords.contains(cur)) out.push_back(cur);
    cur.clear();
  };
  for (unsigned char c : text) {
    if (c >= 0x80) {
      cur.push_back(static_cast<char>(c));
    } else if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

namespace {

const Json* find_ci(const Json& obj, std::string_view key) {
  if (!obj.is_object()) return nullptr;
  const auto lower = [](std::string_view s) {
    std::string r(s);
    std::transform(r.begin(), r.end(), r.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return r;
  };
  const auto want = lower(key);
  for (const auto& [k, v] : obj.items()) {
    if (lower(k) == want) return &v;
  }
  return nullptr;
}

}  // namespace

std::vector<WordCount> word_frequencies(std::istream& log, const std::vector<std::string>& candidates,
                                        const Stopwords& stopwords) {
  std::vector<std::map<std::string, std::size_t>> counts(candidates.size());
  scan_log(log, [&](const LogRecord& r) {
    if (r.type != RecordType::Listen || !r.item.is_object() || !r.item.contains("support")) return;
    const auto& support = r.item["support"];
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const auto* view = find_ci(support, candidates[c]);
      if (view == nullptr) continue;
      const auto* text = find_ci(*view, "Overall view");
      if (text == nullptr || !text->is_string()) continue;
      for (auto& tok : tokenize(text->get_ref<const std::string&>(), stopwords)) ++counts[c][tok];
    }
  });

  std::vector<WordCount> rows;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const auto start = rows.size();
    for (const auto& [tok, n] : counts[c]) rows.push_back({candidates[c], tok, n});
    std::stable_sort(rows.begin() + static_cast<std::ptrdiff_t>(start), rows.end(),
                     [](const WordCount& a, const WordCount& b) { return a.count > b.count; });
  }
  return rows;
}

std::string csv_field(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_wordfreq_csv(const std::vector<WordCount>& rows, std::ostream& out) {
  out << "candidate,token,count\n";
  for (const auto& r : rows) out << csv_field(r.candidate) << ',' << csv_field(r.token) << ',' << r.count << '\n';
}

}  // namespace casevo
