#include "medsgraph/records.hpp"

namespace medsgraph::meds {

size_t MedsDataset::event_count() const {
  size_t n = 0;
  for (const EventShard& shard : shards) n += shard.events.size();
  return n;
}

}  // namespace medsgraph::meds
