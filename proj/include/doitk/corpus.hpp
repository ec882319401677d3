#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace doitk::corpus {

/// One directed, timestamped text sent from `sender` to `recipient`.
struct Message {
  std::string id;
  std::string sender;
  std::string recipient;
  std::int64_t timestamp = 0;  // seconds since epoch
  std::string text;

  bool operator==(const Message&) const = default;
};

enum class Format { jsonl, csv };

std::optional<Format> parse_format(std::string_view name);
/// Format from file extension (".csv" -> csv, anything else -> jsonl).
Format format_for_path(const std::filesystem::path& path);

struct LoadOptions {
  /// Skip malformed records (counted) instead of throwing on the first one.
  bool skip_malformed = false;
};

struct LoadResult {
  std::vector<Message> messages;  // file order
  std::size_t self_messages_skipped = 0;
  std::size_t malformed_skipped = 0;
};

/// Throws DataError naming the line on parse failure (unless skipping) and on
/// duplicate ids. Self-messages are always skipped and counted.
LoadResult load_messages(const std::filesystem::path& path, Format format,
                         const LoadOptions& options = {});
LoadResult parse_messages(std::string_view content, Format format,
                          const LoadOptions& options = {});

std::string to_jsonl(const std::vector<Message>& messages);

/// Immutable id -> message lookup over a loaded corpus.
class MessageStore {
 public:
  MessageStore() = default;
  explicit MessageStore(std::vector<Message> messages);

  const std::vector<Message>& messages() const { return messages_; }
  std::size_t size() const { return messages_.size(); }
  const Message& at(std::size_t i) const { return messages_.at(i); }
  /// Index of the message with this id, if present.
  std::optional<std::size_t> find(std::string_view id) const;
  const Message& get(std::string_view id) const;

 private:
  std::vector<Message> messages_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Unordered user pair; `first` < `second` lexicographically.
struct UserPair {
  std::string first;
  std::string second;

  static UserPair of(const std::string& u, const std::string& v);
  auto operator<=>(const UserPair&) const = default;
};

struct Dyad {
  UserPair users;
  std::vector<std::string> message_ids;  // sorted by (timestamp, id)
};

/// All dyads of a corpus, sorted by user pair.
struct DyadIndex {
  std::vector<Dyad> dyads;

  std::size_t message_count() const;
  bool operator==(const DyadIndex& o) const;
};

/// Throws DataError on duplicate ids.
DyadIndex build_dyads(const std::vector<Message>& messages);

struct CorpusStats {
  std::size_t user_count = 0;
  std::size_t dyad_count = 0;
  std::size_t message_count = 0;
  double conv_len_mean = 0.0;
  double conv_len_median = 0.0;
  double msg_len_mean = 0.0;
  double msg_len_median = 0.0;
};

using TokenCounter = std::function<std::size_t(std::string_view)>;

/// Throws DataError on an empty corpus.
CorpusStats corpus_stats(const std::vector<Message>& messages, const DyadIndex& dyads,
                         const TokenCounter& count_tokens);

double mean(const std::vector<double>& v);
double median(std::vector<double> v);

}  // namespace doitk::corpus
