#include "doitk/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <set>

#include <json.hpp>

#include "doitk/error.hpp"
#include "doitk/io.hpp"

namespace doitk::corpus {

using nlohmann::json;

std::optional<Format> parse_format(std::string_view name) {
  if (name == "jsonl") return Format::jsonl;
  if (name == "csv") return Format::csv;
  return std::nullopt;
}

Format format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? Format::csv : Format::jsonl;
}

namespace {

struct RecordError {
  std::string reason;
};

std::string id_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw RecordError{std::string("missing key '") + key + "'"};
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<std::int64_t>());
  throw RecordError{std::string("key '") + key + "' must be a string"};
}

std::int64_t parse_timestamp(const json& v) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  throw RecordError{"timestamp must be an integer"};
}

std::int64_t parse_timestamp(const std::string& s) {
  std::int64_t t = 0;
  auto sv = io::trim(s);
  auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), t);
  if (ec != std::errc() || ptr != sv.data() + sv.size() || sv.empty())
    throw RecordError{"timestamp '" + s + "' is not an integer"};
  return t;
}

void validate(const Message& m) {
  if (m.id.empty()) throw RecordError{"empty id"};
  if (m.sender.empty() || m.recipient.empty()) throw RecordError{"empty user id"};
  if (m.timestamp < 0) throw RecordError{"negative timestamp"};
}

class Collector {
 public:
  explicit Collector(const LoadOptions& opt) : opt_(opt) {}

  void record_error(std::size_t line, const std::string& reason) {
    if (!opt_.skip_malformed)
      throw DataError("line " + std::to_string(line) + ": " + reason);
    ++result_.malformed_skipped;
  }

  void add(std::size_t line, Message m) {
    if (m.sender == m.recipient) {
      ++result_.self_messages_skipped;
      return;
    }
    if (!ids_.insert(m.id).second)
      throw DataError("line " + std::to_string(line) + ": duplicate message id '" + m.id + "'");
    result_.messages.push_back(std::move(m));
  }

  LoadResult take() { return std::move(result_); }

 private:
  const LoadOptions& opt_;
  LoadResult result_;
  std::set<std::string> ids_;
};

}  // namespace

LoadResult parse_messages(std::string_view content, Format format, const LoadOptions& options) {
  Collector col(options);
  if (format == Format::jsonl) {
    std::size_t line_no = 0;
    for (const auto& raw : io::split(content, '\n')) {
      ++line_no;
      auto line = io::trim(raw);
      if (line.empty()) continue;
      Message m;
      try {
        json j = json::parse(line);
        if (!j.is_object()) throw RecordError{"record is not a JSON object"};
        m.id = id_field(j, "id");
        m.sender = id_field(j, "sender");
        m.recipient = id_field(j, "recipient");
        if (!j.contains("timestamp")) throw RecordError{"missing key 'timestamp'"};
        m.timestamp = parse_timestamp(j["timestamp"]);
        if (!j.contains("text") || !j["text"].is_string())
          throw RecordError{"missing or non-string 'text'"};
        m.text = j["text"].get<std::string>();
        validate(m);
      } catch (const json::exception& e) {
        col.record_error(line_no, std::string("invalid JSON: ") + e.what());
        continue;
      } catch (const RecordError& e) {
        col.record_error(line_no, e.reason);
        continue;
      }
      col.add(line_no, std::move(m));
    }
    return col.take();
  }

  auto records = io::parse_csv(content);
  if (records.empty()) throw DataError("csv: missing header row");
  const std::vector<std::string> expected{"id", "sender", "recipient", "timestamp", "text"};
  std::vector<std::string> header;
  for (const auto& f : records[0].fields) header.emplace_back(io::trim(f));
  if (header != expected)
    throw DataError("csv: header must be id,sender,recipient,timestamp,text");
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    Message m;
    try {
      if (rec.fields.size() != 5)
        throw RecordError{"expected 5 fields, got " + std::to_string(rec.fields.size())};
      m.id = rec.fields[0];
      m.sender = rec.fields[1];
      m.recipient = rec.fields[2];
      m.timestamp = parse_timestamp(rec.fields[3]);
      m.text = rec.fields[4];
      validate(m);
    } catch (const RecordError& e) {
      col.record_error(rec.line, e.reason);
      continue;
    }
    col.add(rec.line, std::move(m));
  }
  return col.take();
}

LoadResult load_messages(const std::filesystem::path& path, Format format,
                         const LoadOptions& options) {
  return parse_messages(io::read_file(path), format, options);
}

std::string to_jsonl(const std::vector<Message>& messages) {
  std::string out;
  for (const auto& m : messages) {
    json j = {{"id", m.id},
              {"sender", m.sender},
              {"recipient", m.recipient},
              {"timestamp", m.timestamp},
              {"text", m.text}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

MessageStore::MessageStore(std::vector<Message> messages) : messages_(std::move(messages)) {
  index_.reserve(messages_.size());
  for (std::size_t i = 0; i < messages_.size(); ++i) {
    if (!index_.emplace(messages_[i].id, i).second)
      throw DataError("duplicate message id '" + messages_[i].id + "'");
  }
}

std::optional<std::size_t> MessageStore::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Message& MessageStore::get(std::string_view id) const {
  auto i = find(id);
  if (!i) throw DataError("unknown message id '" + std::string(id) + "'");
  return messages_[*i];
}

UserPair UserPair::of(const std::string& u, const std::string& v) {
  return u < v ? UserPair{u, v} : UserPair{v, u};
}

std::size_t DyadIndex::message_count() const {
  std::size_t n = 0;
  for (const auto& d : dyads) n += d.message_ids.size();
  return n;
}

bool DyadIndex::operator==(const DyadIndex& o) const {
  if (dyads.size() != o.dyads.size()) return false;
  for (std::size_t i = 0; i < dyads.size(); ++i) {
    if (dyads[i].users != o.dyads[i].users) return false;
    if (dyads[i].message_ids != o.dyads[i].message_ids) return false;
  }
  return true;
}

DyadIndex build_dyads(const std::vector<Message>& messages) {
  std::map<UserPair, std::vector<const Message*>> groups;
  std::set<std::string_view> ids;
  for (const auto& m : messages) {
    if (!ids.insert(m.id).second) throw DataError("duplicate message id '" + m.id + "'");
    groups[UserPair::of(m.sender, m.recipient)].push_back(&m);
  }
  DyadIndex index;
  index.dyads.reserve(groups.size());
  for (auto& [pair, ms] : groups) {
    std::sort(ms.begin(), ms.end(), [](const Message* a, const Message* b) {
      if (a->timestamp != b->timestamp) return a->timestamp < b->timestamp;
      return a->id < b->id;
    });
    Dyad d{pair, {}};
    d.message_ids.reserve(ms.size());
    for (const Message* m : ms) d.message_ids.push_back(m->id);
    index.dyads.push_back(std::move(d));
  }
  return index;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

CorpusStats corpus_stats(const std::vector<Message>& messages, const DyadIndex& dyads,
                         const TokenCounter& count_tokens) {
  if (messages.empty()) throw DataError("corpus_stats: empty corpus");
  CorpusStats s;
  std::set<std::string_view> users;
  std::vector<double> msg_len;
  msg_len.reserve(messages.size());
  for (const auto& m : messages) {
    users.insert(m.sender);
    users.insert(m.recipient);
    msg_len.push_back(static_cast<double>(count_tokens(m.text)));
  }
  std::vector<double> conv_len;
  conv_len.reserve(dyads.dyads.size());
  for (const auto& d : dyads.dyads) conv_len.push_back(static_cast<double>(d.message_ids.size()));

  s.user_count = users.size();
  s.dyad_count = dyads.dyads.size();
  s.message_count = messages.size();
  s.conv_len_mean = mean(conv_len);
  s.conv_len_median = median(conv_len);
  s.msg_len_mean = mean(msg_len);
  s.msg_len_median = median(msg_len);
  return s;
}

}  // namespace doitk::corpus
