#pragma once

#include <chrono>
#include <mutex>
#include <thread>

namespace streetpoll {

// Token-bucket limiter shared across annotation workers. Refills
// continuously at `per_minute`; acquire() blocks until a token is
// available. A non-positive rate disables limiting.
class TokenBucket {
public:
    explicit TokenBucket(double per_minute, double burst = 1.0)
        : rate_per_sec_(per_minute / 60.0),
          capacity_(burst < 1.0 ? 1.0 : burst),
          tokens_(capacity_),
          last_(std::chrono::steady_clock::now()) {}

    bool try_acquire() {
        if (rate_per_sec_ <= 0.0) return true;
        std::lock_guard<std::mutex> lock(mutex_);
        refill();
        if (tokens_ >= 1.0) {
            tokens_ -= 1.0;
            return true;
        }
        return false;
    }

    void acquire() {
        while (!try_acquire()) {
            std::this_thread::sleep_for(std::chrono::milliseconds(20));
        }
    }

private:
    void refill() {
        auto now = std::chrono::steady_clock::now();
        std::chrono::duration<double> elapsed = now - last_;
        last_ = now;
        tokens_ += elapsed.count() * rate_per_sec_;
        if (tokens_ > capacity_) tokens_ = capacity_;
    }

    double rate_per_sec_;
    double capacity_;
    double tokens_;
    std::chrono::steady_clock::time_point last_;
    std::mutex mutex_;
};

} // namespace streetpoll
