#include "doitk/doi.hpp"

#include <algorithm>
#include <numeric>
#include <json.hpp>

#include "doitk/error.hpp"
#include "doitk/io.hpp"

namespace doitk::doi {

using nlohmann::json;

std::string DoiModel::label_of(std::size_t id) const {
  if (id < dois.size() && !dois[id].label.empty()) return dois[id].label;
  return "D" + std::to_string(id);
}

DoiModel form_dois(const community::Partition& partition, const DenseMatrix& W, std::size_t n_terms,
                   const std::vector<std::string>& terms) {
  if (partition.membership.size() != W.cols()) throw DataError("form_dois: partition and W disagree on k");
  if (terms.size() != W.rows()) throw DataError("form_dois: vocabulary size does not match W");
  DoiModel model;
  model.bucket_to_doi = partition.membership;
  std::size_t c = 0;
  for (auto m : partition.membership) c = std::max(c, m + 1);
  model.dois.resize(c);
  for (std::size_t d = 0; d < c; ++d) model.dois[d].id = d;
  for (std::size_t b = 0; b < partition.membership.size(); ++b) model.dois[partition.membership[b]].buckets.push_back(b);

  const std::size_t take = std::min(n_terms, W.rows());
  for (auto& d : model.dois) {
    std::vector<double> score(W.rows(), 0.0);
    for (std::size_t t = 0; t < W.rows(); ++t)
      for (std::size_t b : d.buckets) score[t] += W(t, b);
    std::vector<std::size_t> idx(W.rows());
    std::iota(idx.begin(), idx.end(), 0);
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(take), idx.end(),
                      [&](std::size_t a, std::size_t b) {
                        if (score[a] != score[b]) return score[a] > score[b];
                        return terms[a] < terms[b];
                      });
    for (std::size_t i = 0; i < take; ++i) d.top_terms.push_back(terms[idx[i]]);
  }
  return model;
}

std::vector<DoiProb> assign_message(const std::vector<nmf::BucketProb>& buckets, const DoiModel& model) {
  std::vector<DoiProb> out;
  for (const auto& b : buckets) {
    if (b.bucket >= model.bucket_to_doi.size()) throw DataError("assign: bucket not covered by the DoI model");
    const std::size_t d = model.bucket_to_doi[b.bucket];
    auto it = std::find_if(out.begin(), out.end(), [&](const DoiProb& x) { return x.doi == d; });
    if (it == out.end())
      out.push_back({d, b.probability});
    else
      it->probability = std::max(it->probability, b.probability);
  }
  std::sort(out.begin(), out.end(), [](const DoiProb& a, const DoiProb& b) {
    if (a.probability != b.probability) return a.probability > b.probability;
    return a.doi < b.doi;
  });
  return out;
}

std::vector<Assignment> assign_messages(const std::vector<std::string>& ids, const convgraph::BucketMap& buckets,
                                        const DoiModel& model) {
  std::vector<Assignment> out;
  out.reserve(ids.size());
  for (const auto& id : ids) {
    auto it = buckets.find(id);
    if (it == buckets.end()) throw DataError("assign: no bucket assignment for message " + id);
    out.push_back({id, assign_message(it->second, model)});
  }
  return out;
}

void attach_labels(DoiModel& model, std::string_view labels_tsv) {
  auto lines = io::split(labels_tsv, '\n');
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (io::trim(lines[ln]).empty()) continue;
    auto f = io::split(lines[ln], '\t');
    if (f.size() != 2) throw DataError("labels line " + std::to_string(ln + 1) + ": expected doi<TAB>label");
    if (ln == 0 && f[0] == "doi") continue;
    std::size_t id = 0;
    try {
      id = std::stoul(f[0]);
    } catch (const std::logic_error&) {
      throw DataError("labels line " + std::to_string(ln + 1) + ": bad DoI id");
    }
    if (id >= model.dois.size()) throw DataError("labels line " + std::to_string(ln + 1) + ": unknown DoI " + f[0]);
    model.dois[id].label = std::string(io::trim(f[1]));
  }
}

std::string model_json(const DoiModel& model) {
  json j;
  j["bucket_to_doi"] = model.bucket_to_doi;
  j["dois"] = json::array();
  for (const auto& d : model.dois)
    j["dois"].push_back({{"id", d.id}, {"label", d.label}, {"buckets", d.buckets}, {"top_terms", d.top_terms}});
  return j.dump(2) + "\n";
}

DoiModel read_model_json(std::string_view text) {
  try {
    auto j = json::parse(text);
    DoiModel m;
    m.bucket_to_doi = j.at("bucket_to_doi").get<std::vector<std::size_t>>();
    for (const auto& d : j.at("dois")) {
      Doi x;
      x.id = d.at("id").get<std::size_t>();
      x.label = d.at("label").get<std::string>();
      x.buckets = d.at("buckets").get<std::vector<std::size_t>>();
      x.top_terms = d.at("top_terms").get<std::vector<std::string>>();
      m.dois.push_back(std::move(x));
    }
    return m;
  } catch (const json::exception& e) {
    throw DataError(std::string("dois.json: ") + e.what());
  }
}

std::string assignments_jsonl(const std::vector<Assignment>& a, const DoiModel& model) {
  std::string out;
  for (const auto& x : a) {
    json j;
    j["message_id"] = x.message_id;
    j["dois"] = json::array();
    for (const auto& d : x.dois) j["dois"].push_back({{"id", d.doi}, {"label", model.label_of(d.doi)}, {"p", d.probability}});
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<Assignment> read_assignments_jsonl(std::string_view text) {
  std::vector<Assignment> out;
  auto lines = io::split(text, '\n');
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (io::trim(lines[ln]).empty()) continue;
    try {
      auto j = json::parse(lines[ln]);
      Assignment a;
      a.message_id = j.at("message_id").get<std::string>();
      for (const auto& d : j.at("dois")) a.dois.push_back({d.at("id").get<std::size_t>(), d.at("p").get<double>()});
      out.push_back(std::move(a));
    } catch (const json::exception& e) {
      throw DataError("assignments line " + std::to_string(ln + 1) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace doitk::doi
