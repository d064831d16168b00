#include "netinf/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "netinf/error.hpp"
#include "netinf/text.hpp"

namespace netinf::ingest {

namespace {

constexpr std::string_view kHeader = "contagion_id,node_id,community,timestamp,votes,title";

struct CsvRow {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

// RFC 4180 reader over a whole document. Quoted fields may span lines.
std::vector<CsvRow> parse_csv(const std::string& doc) {
  std::vector<CsvRow> rows;
  CsvRow row{1, {}};
  std::string field;
  std::size_t line = 1;
  bool quoted = false;
  bool field_was_quoted = false;
  auto end_field = [&] {
    row.fields.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_row = [&] {
    end_field();
    if (!(row.fields.size() == 1 && row.fields[0].empty())) rows.push_back(std::move(row));
    row = CsvRow{line, {}};
  };
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const char ch = doc[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < doc.size() && doc[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line;
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        if (!field.empty() || field_was_quoted) throw ParseError(line, "stray quote");
        quoted = true;
        field_was_quoted = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < doc.size() && doc[i + 1] == '\n') break;
        field += ch;
        break;
      case '\n':
        ++line;
        end_row();
        break;
      default:
        if (field_was_quoted) throw ParseError(line, "text after closing quote");
        field += ch;
    }
  }
  if (quoted) throw ParseError(row.line, "unterminated quoted field");
  end_row();
  return rows;
}

bool needs_quotes(const std::string& s) {
  return s.find_first_of(",\"\r\n") != std::string::npos;
}

void write_field(std::ostream& out, const std::string& s) {
  if (!needs_quotes(s)) {
    out << s;
    return;
  }
  out << '"';
  for (char ch : s) {
    if (ch == '"') out << '"';
    out << ch;
  }
  out << '"';
}

}  // namespace

std::vector<SubmissionRecord> read_submissions(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto rows = parse_csv(ss.str());
  if (rows.empty()) throw ParseError(1, "missing header");
  {
    std::string header;
    for (std::size_t i = 0; i < rows[0].fields.size(); ++i)
      header += (i ? "," : "") + rows[0].fields[i];
    if (header != kHeader) throw ParseError(1, "expected header '" + std::string(kHeader) + "'");
  }
  std::vector<SubmissionRecord> records;
  records.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& f = rows[r].fields;
    const std::size_t line = rows[r].line;
    if (f.size() != 6) throw ParseError(line, "expected 6 fields, found " + std::to_string(f.size()));
    SubmissionRecord rec;
    rec.contagion_id = f[0];
    if (rec.contagion_id.empty()) throw ParseError(line, "empty contagion_id");
    if (!f[1].empty()) rec.node_id = f[1];
    rec.community = f[2];
    if (!text::parse_int(f[3], rec.timestamp) || rec.timestamp <= 0)
      throw ParseError(line, "timestamp must be a positive integer");
    if (!text::parse_int(f[4], rec.votes)) throw ParseError(line, "votes must be an integer");
    if (!f[5].empty()) rec.title = f[5];
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<SubmissionRecord> load_submissions(const std::string& path) {
  std::istringstream in(text::read_file(path));
  return read_submissions(in);
}

void write_submissions(std::ostream& out, const std::vector<SubmissionRecord>& records) {
  out << kHeader << '\n';
  for (const auto& r : records) {
    write_field(out, r.contagion_id);
    out << ',';
    write_field(out, r.node_id.value_or(""));
    out << ',';
    write_field(out, r.community);
    out << ',' << r.timestamp << ',' << r.votes << ',';
    write_field(out, r.title.value_or(""));
    out << '\n';
  }
}

CleanResult clean(std::vector<SubmissionRecord> records) {
  CleanResult result;
  const auto kept = std::stable_partition(records.begin(), records.end(),
                                          [](const auto& r) { return r.node_id.has_value(); });
  result.dropped = static_cast<std::size_t>(records.end() - kept);
  records.erase(kept, records.end());
  result.records = std::move(records);
  return result;
}

std::vector<EventList> build_event_lists(const std::vector<SubmissionRecord>& records) {
  std::map<std::string, std::vector<SubmissionEvent>> groups;
  for (const auto& r : records) {
    if (!r.node_id) throw InvalidArgument("unattributed record in contagion " + r.contagion_id);
    groups[r.contagion_id].push_back({*r.node_id, r.timestamp, r.votes, r.community});
  }
  std::vector<EventList> lists;
  lists.reserve(groups.size());
  for (auto& [id, events] : groups) {
    std::stable_sort(events.begin(), events.end(),
                     [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
    lists.push_back({id, std::move(events)});
  }
  return lists;
}

std::vector<EventList> threshold(std::vector<EventList> lists, std::size_t min_length,
                                 std::optional<std::int64_t> min_votes) {
  if (min_length < 1) throw InvalidArgument("min_length must be at least 1");
  if (min_votes) {
    for (auto& list : lists)
      std::erase_if(list.events, [&](const auto& ev) { return ev.votes < *min_votes; });
  }
  std::erase_if(lists, [&](const auto& list) { return list.events.size() < min_length; });
  return lists;
}

ThresholdStats stats(const std::vector<EventList>& lists, std::size_t min_length) {
  ThresholdStats s;
  s.min_length = min_length;
  s.contagions = lists.size();
  for (const auto& list : lists) s.transmissions += list.events.size();
  if (s.contagions > 0)
    s.avg_length = static_cast<double>(s.transmissions) / static_cast<double>(s.contagions);
  return s;
}

void write_stats_csv(std::ostream& out, const std::vector<ThresholdStats>& rows) {
  out << "min_length,avg_length,contagions,transmissions\n";
  for (const auto& r : rows) {
    out << r.min_length << ',' << (r.avg_length ? text::format_fixed(*r.avg_length, 1) : "NA")
        << ',' << r.contagions << ',' << r.transmissions << '\n';
  }
}

CascadeSet to_cascade_set(const std::vector<EventList>& lists) {
  std::vector<const EventList*> kept;
  std::vector<std::vector<const SubmissionEvent*>> firsts;
  std::set<std::string> users;
  for (const auto& list : lists) {
    std::unordered_set<std::string_view> seen;
    std::vector<const SubmissionEvent*> earliest;
    for (const auto& ev : list.events)
      if (seen.insert(ev.node_id).second) earliest.push_back(&ev);
    if (earliest.size() < 2) continue;
    for (const auto* ev : earliest) users.insert(ev->node_id);
    kept.push_back(&list);
    firsts.push_back(std::move(earliest));
  }

  CascadeSet set;
  std::map<std::string_view, NodeId> ids;
  NodeId next = 0;
  for (const auto& u : users) {
    ids.emplace(u, next);
    set.nodes.emplace(next++, u);
  }
  set.cascades.reserve(kept.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    Cascade c;
    c.contagion_id = kept[i]->contagion_id;
    for (const auto* ev : firsts[i])
      c.events.push_back({ids.at(ev->node_id), static_cast<double>(ev->timestamp)});
    set.cascades.push_back(std::move(c));
  }
  validate(set);
  return set;
}

std::vector<EventList> to_event_lists(const CascadeSet& set) {
  std::vector<EventList> lists;
  lists.reserve(set.cascades.size());
  for (const auto& c : set.cascades) {
    EventList list{c.contagion_id, {}};
    for (const auto& ev : c.events)
      list.events.push_back({set.nodes.at(ev.node), std::llround(ev.time), 0, ""});
    lists.push_back(std::move(list));
  }
  return lists;
}

}  // namespace netinf::ingest
