package demo.handler;

public class HandlerManager {

    public static final Logger log = LoggerFactory.getLogger(HandlerManager.class);

    public static final Logger logger = LoggerFactory.getLogger(HandlerManager.class);
}
