#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "vamsim/core.hpp"

namespace vamsim {

/// Deterministic min-queue ordered by (time, insertion sequence). Equal
/// timestamps pop in insertion order; scheduling before the last popped time
/// is a causality violation and is rejected.
template <typename Payload>
class EventQueue {
public:
    struct Entry {
        Seconds time;
        std::uint64_t seq;
        Payload payload;
    };

    void push(Seconds time, Payload payload) {
        if (time < lastPopped_)
            throw std::invalid_argument("EventQueue: event scheduled in the past");
        heap_.push(Entry{time, nextSeq_++, std::move(payload)});
    }

    std::optional<Entry> pop() {
        if (heap_.empty()) return std::nullopt;
        Entry e = heap_.top();
        heap_.pop();
        lastPopped_ = e.time;
        return e;
    }

    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    Seconds lastPoppedTime() const { return lastPopped_; }

private:
    struct Later {
        bool operator()(const Entry& a, const Entry& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };
    std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
    std::uint64_t nextSeq_ = 0;
    Seconds lastPopped_ = 0.0;
};

}  // namespace vamsim
