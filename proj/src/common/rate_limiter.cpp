#include "probegen/common/rate_limiter.hpp"

#include <algorithm>
#include <thread>

namespace probegen {

RateLimiter::RateLimiter(double rate, double burst)
    : RateLimiter(rate, burst, [] { return Clock::now(); },
                  [](Clock::duration d) { std::this_thread::sleep_for(d); }) {}

RateLimiter::RateLimiter(double rate, double burst, NowFn now, SleepFn sleep)
    : rate_(rate),
      burst_(std::max(1.0, burst)),
      tokens_(std::max(1.0, burst)),
      now_(std::move(now)),
      sleep_(std::move(sleep)) {
    last_ = now_();
}

void RateLimiter::refill(Clock::time_point now) {
    double elapsed = std::chrono::duration<double>(now - last_).count();
    if (elapsed > 0) {
        tokens_ = std::min(burst_, tokens_ + elapsed * rate_);
        last_ = now;
    }
}

bool RateLimiter::try_acquire() {
    if (rate_ <= 0) {
        return true;
    }
    std::lock_guard lock(mutex_);
    refill(now_());
    if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return true;
    }
    return false;
}

void RateLimiter::acquire() {
    if (rate_ <= 0) {
        return;
    }
    std::unique_lock lock(mutex_);
    for (;;) {
        refill(now_());
        if (tokens_ >= 1.0) {
            tokens_ -= 1.0;
            return;
        }
        auto wait = std::chrono::duration<double>((1.0 - tokens_) / rate_);
        lock.unlock();
        sleep_(std::chrono::duration_cast<Clock::duration>(wait));
        lock.lock();
    }
}

}  // namespace probegen
