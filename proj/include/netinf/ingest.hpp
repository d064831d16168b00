#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "netinf/cascade.hpp"

namespace netinf::ingest {

/// One row of a resubmission log. An absent node_id marks an unattributed
/// submission.
struct SubmissionRecord {
  std::string contagion_id;
  std::optional<std::string> node_id;
  std::string community;
  std::int64_t timestamp = 0;
  std::int64_t votes = 0;
  std::optional<std::string> title;

  bool operator==(const SubmissionRecord&) const = default;
};

/// Parses the log format: header `contagion_id,node_id,community,timestamp,votes,title`,
/// comma separated, RFC 4180 quoting (quoted fields may contain commas,
/// newlines and doubled quotes). An empty node_id or title field is absent.
std::vector<SubmissionRecord> read_submissions(std::istream& in);
std::vector<SubmissionRecord> load_submissions(const std::string& path);
void write_submissions(std::ostream& out, const std::vector<SubmissionRecord>& records);

struct CleanResult {
  std::vector<SubmissionRecord> records;
  std::size_t dropped = 0;
};

/// Drops unattributed records, keeping input order.
CleanResult clean(std::vector<SubmissionRecord> records);

struct SubmissionEvent {
  std::string node_id;
  std::int64_t timestamp = 0;
  std::int64_t votes = 0;
  std::string community;

  bool operator==(const SubmissionEvent&) const = default;
};

/// All submissions of one contagion sorted by timestamp (stable). A node may
/// appear several times.
struct EventList {
  std::string contagion_id;
  std::vector<SubmissionEvent> events;

  bool operator==(const EventList&) const = default;
};

/// Groups attributed records by contagion id; lists come out ordered by
/// contagion id. Throws InvalidArgument on an unattributed record.
std::vector<EventList> build_event_lists(const std::vector<SubmissionRecord>& records);

/// Keeps lists with at least `min_length` events. With `min_votes`, events
/// below the vote floor are removed first.
std::vector<EventList> threshold(std::vector<EventList> lists, std::size_t min_length,
                                 std::optional<std::int64_t> min_votes = std::nullopt);

struct ThresholdStats {
  std::size_t min_length = 0;
  std::size_t contagions = 0;
  std::size_t transmissions = 0;
  /// transmissions / contagions; absent when there are no contagions.
  std::optional<double> avg_length;
};

ThresholdStats stats(const std::vector<EventList>& lists, std::size_t min_length);

/// Stats CSV: `min_length,avg_length,contagions,transmissions`, average to one
/// decimal, `NA` when undefined.
void write_stats_csv(std::ostream& out, const std::vector<ThresholdStats>& rows);

/// Keeps the earliest event per node, drops contagions left with fewer than
/// two nodes, and numbers users 0.. in lexicographic order of user id (the
/// user id becomes the node label).
CascadeSet to_cascade_set(const std::vector<EventList>& lists);

/// Inverse view of a CascadeSet as event lists keyed by node label.
std::vector<EventList> to_event_lists(const CascadeSet& set);

}  // namespace netinf::ingest
