#pragma once

#include <chrono>
#include <functional>
#include <mutex>

namespace probegen {

// Token bucket shared by every caller of one provider.
class RateLimiter {
public:
    using Clock = std::chrono::steady_clock;
    using NowFn = std::function<Clock::time_point()>;
    using SleepFn = std::function<void(Clock::duration)>;

    // `rate` tokens per second, at most `burst` banked. rate <= 0 disables limiting.
    RateLimiter(double rate, double burst);
    RateLimiter(double rate, double burst, NowFn now, SleepFn sleep);

    // Blocks until a token is available.
    void acquire();
    bool try_acquire();

private:
    void refill(Clock::time_point now);

    double rate_;
    double burst_;
    double tokens_;
    Clock::time_point last_;
    NowFn now_;
    SleepFn sleep_;
    std::mutex mutex_;
};

}  // namespace probegen
